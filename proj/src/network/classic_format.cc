#include <regex>
#include <sstream>

#include "tdarc/network.h"

namespace tdarc::network {

namespace {

enum class section { none, edges_req, edges_noreq, arcs_req, arcs_noreq };

std::string upper(std::string s) {
  for (auto& c : s) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return s;
}

}  // namespace

instance parse_classic(std::string_view text) {
  static std::regex const link_re{
      R"(\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*cost[eo]?\s+([-+0-9.eE]+)(?:\s+demanda\s+([-+0-9.eE]+))?)",
      std::regex::icase};
  static std::regex const header_re{R"(^\s*([A-Z_]+)\s*:\s*(.*?)\s*$)"};

  instance inst;
  std::uint32_t vertices = 0U;
  long fleet = 0;
  double capacity = 0.0;
  long depot_1 = 1;
  auto cur = section::none;

  struct raw_link {
    std::uint32_t u, v;
    double cost, demand;
    bool required, arc;
    std::size_t line;
  };
  std::vector<raw_link> raw;

  std::istringstream in{std::string{text}};
  std::string line;
  auto line_no = std::size_t{0};
  auto const number = [&](std::string const& s) {
    try {
      std::size_t used = 0;
      auto const x = std::stod(s, &used);
      return x;
    } catch (std::exception const&) {
      throw parse_error{line_no, "expected a number, got '" + s + "'"};
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::smatch m;
    if (std::regex_search(line, m, link_re)) {
      if (cur == section::none) {
        throw parse_error{line_no, "link listed outside a LISTA_ section"};
      }
      auto const req = cur == section::edges_req || cur == section::arcs_req;
      raw.push_back({static_cast<std::uint32_t>(std::stoul(m[1].str())),
                     static_cast<std::uint32_t>(std::stoul(m[2].str())),
                     number(m[3].str()),
                     m[4].matched ? number(m[4].str()) : 0.0, req,
                     cur == section::arcs_req || cur == section::arcs_noreq,
                     line_no});
      continue;
    }
    auto const up = upper(line);
    if (up.find("LISTA_ARISTAS_REQ") != std::string::npos) {
      cur = section::edges_req;
    } else if (up.find("LISTA_ARISTAS_NOREQ") != std::string::npos) {
      cur = section::edges_noreq;
    } else if (up.find("LISTA_ARCOS_REQ") != std::string::npos) {
      cur = section::arcs_req;
    } else if (up.find("LISTA_ARCOS_NOREQ") != std::string::npos) {
      cur = section::arcs_noreq;
    } else if (std::regex_match(up, m, header_re)) {
      auto const key = m[1].str();
      auto const value = m[2].str();
      if (key == "NOMBRE") {
        inst.name = std::string{line.substr(line.find(':') + 1)};
        auto const b = inst.name.find_first_not_of(" \t\r");
        auto const e = inst.name.find_last_not_of(" \t\r");
        inst.name = b == std::string::npos ? "" : inst.name.substr(b, e - b + 1);
      } else if (key == "VERTICES") {
        vertices = static_cast<std::uint32_t>(number(value));
      } else if (key == "VEHICULOS") {
        fleet = static_cast<long>(number(value));
      } else if (key == "CAPACIDAD") {
        capacity = number(value);
      } else if (key == "DEPOSITO") {
        depot_1 = static_cast<long>(number(value));
      }
      // other keys (comments, totals, cost type) carry no model data
    }
  }

  if (vertices == 0U) {
    throw parse_error{line_no, "missing VERTICES"};
  }
  if (depot_1 < 1 || static_cast<std::uint32_t>(depot_1) > vertices) {
    throw parse_error{line_no, "DEPOSITO out of range"};
  }
  // 1-based ids, depot swapped to 0
  auto const depot = static_cast<std::uint32_t>(depot_1 - 1);
  auto const remap = [&](std::uint32_t x1, std::size_t at) {
    if (x1 < 1U || x1 > vertices) {
      throw parse_error{at, "vertex " + std::to_string(x1) + " out of range"};
    }
    auto const x = x1 - 1U;
    return x == depot ? 0U : x == 0U ? depot : x;
  };

  inst.vertex_count = vertices;
  inst.capacity = capacity > 0.0 ? capacity : pl_time::kInfinity;
  for (auto const& r : raw) {
    link l;
    l.id = static_cast<link_id_t>(inst.links.size());
    l.kind = r.arc ? link_kind::arc : link_kind::edge;
    l.from = remap(r.u, r.line);
    l.to = remap(r.v, r.line);
    l.distance = r.cost;
    l.required = r.required;
    l.demand = r.required ? r.demand : 0.0;
    for (auto d = 0U; d != 2U; ++d) {
      l.travel[d] = pl_time::speed_function::constant(1.0, pl_time::kInfinity);
      l.service[d] = l.travel[d];
    }
    inst.links.push_back(std::move(l));
  }
  index_services(inst);
  inst.fleet = fleet > 0 ? static_cast<std::uint32_t>(fleet)
                         : static_cast<std::uint32_t>(inst.required.size());
  make_demands_integral(inst);
  validate(inst);
  return inst;
}

}  // namespace tdarc::network
