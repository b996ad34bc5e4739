#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "tdarc/network.h"

namespace tdarc::network {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  auto i = 0U;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    auto const start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > start) {
      tokens.push_back(line.substr(start, i - start));
    }
  }
  return tokens;
}

double to_double(std::string_view s, std::size_t line) {
  if (s == "inf") {
    return pl_time::kInfinity;
  }
  double x = 0.0;
  auto const r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw parse_error{line, "expected a number, got '" + std::string{s} + "'"};
  }
  return x;
}

std::uint32_t to_uint(std::string_view s, std::size_t line) {
  std::uint32_t x = 0U;
  auto const r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw parse_error{line,
                      "expected an unsigned integer, got '" + std::string{s} + "'"};
  }
  return x;
}

void put(std::string& out, double x) {
  if (x == pl_time::kInfinity) {
    out += "inf";
    return;
  }
  char buf[64];
  auto const r = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, r.ptr);
}

struct raw_speed {
  std::size_t line;
  std::vector<double> breakpoints, speeds;
};

}  // namespace

instance parse_native(std::string_view text) {
  instance inst;
  std::map<std::string, std::pair<std::uint32_t, std::size_t>> counts;
  std::optional<std::uint32_t> vertices, fleet;
  std::optional<double> capacity, duration;
  bool has_name = false;
  std::map<std::pair<link_id_t, unsigned>, raw_speed> travel, service;

  auto line_no = std::size_t{0};
  std::istringstream in{std::string{text}};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = std::string_view{raw};
    if (auto const hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto const tok = split(line);
    if (tok.empty()) {
      continue;
    }
    auto const key = tok[0];
    auto const expect = [&](std::size_t n) {
      if (tok.size() != n) {
        throw parse_error{line_no, std::string{key} + ": expected " +
                                       std::to_string(n - 1) + " fields"};
      }
    };

    if (key == "NAME") {
      auto const pos = line.find("NAME") + 4;
      auto name = line.substr(pos);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) {
        name.remove_prefix(1);
      }
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
        name.remove_suffix(1);
      }
      inst.name = std::string{name};
      has_name = true;
    } else if (key == "VERTICES") {
      expect(2);
      vertices = to_uint(tok[1], line_no);
    } else if (key == "EDGES" || key == "ARCS" || key == "REQUIRED_EDGES" ||
               key == "REQUIRED_ARCS") {
      expect(2);
      counts[std::string{key}] = {to_uint(tok[1], line_no), line_no};
    } else if (key == "VEHICLES") {
      expect(2);
      fleet = to_uint(tok[1], line_no);
    } else if (key == "CAPACITY") {
      expect(2);
      capacity = to_double(tok[1], line_no);
    } else if (key == "DURATION_LIMIT") {
      expect(2);
      duration = to_double(tok[1], line_no);
    } else if (key == "E" || key == "A") {
      expect(6);
      link l;
      l.id = to_uint(tok[1], line_no);
      if (l.id != inst.links.size()) {
        throw parse_error{line_no, "link ids must be 0, 1, 2, ... in file order"};
      }
      l.kind = key == "E" ? link_kind::edge : link_kind::arc;
      l.from = to_uint(tok[2], line_no);
      l.to = to_uint(tok[3], line_no);
      l.distance = to_double(tok[4], line_no);
      if (tok[5] != "-") {
        l.required = true;
        l.demand = to_double(tok[5], line_no);
      }
      inst.links.push_back(std::move(l));
    } else if (key == "SPEED" || key == "SERVICE_SPEED") {
      if (tok.size() < 4U) {
        throw parse_error{line_no, std::string{key} + ": truncated line"};
      }
      auto const id = to_uint(tok[1], line_no);
      if (tok[2] != "+" && tok[2] != "-") {
        throw parse_error{line_no, "direction must be + or -"};
      }
      auto const dir = tok[2] == "+" ? 0U : 1U;
      auto const h = to_uint(tok[3], line_no);
      if (h == 0U || tok.size() != 4U + 2U * h - 1U) {
        throw parse_error{line_no, std::string{key} +
                                       ": expected h-1 breakpoints and h speeds"};
      }
      raw_speed s{line_no, {}, {}};
      for (auto k = 0U; k + 1U < h; ++k) {
        s.breakpoints.push_back(to_double(tok[4U + k], line_no));
      }
      for (auto k = 0U; k != h; ++k) {
        s.speeds.push_back(to_double(tok[4U + h - 1U + k], line_no));
      }
      auto& target = key == "SPEED" ? travel : service;
      if (!target.emplace(std::pair{id, dir}, std::move(s)).second) {
        throw parse_error{line_no, std::string{key} + ": duplicate line"};
      }
    } else {
      throw parse_error{line_no, "unknown keyword '" + std::string{key} + "'"};
    }
  }

  auto const require = [&](bool present, char const* what) {
    if (!present) {
      throw parse_error{line_no, std::string{"missing header field "} + what};
    }
  };
  require(has_name, "NAME");
  require(vertices.has_value(), "VERTICES");
  require(fleet.has_value(), "VEHICLES");
  require(capacity.has_value(), "CAPACITY");
  require(duration.has_value(), "DURATION_LIMIT");
  for (auto const* k : {"EDGES", "ARCS", "REQUIRED_EDGES", "REQUIRED_ARCS"}) {
    require(counts.contains(k), k);
  }

  inst.vertex_count = *vertices;
  inst.fleet = *fleet;
  inst.capacity = *capacity;
  inst.duration_limit = *duration;

  std::uint32_t edges = 0U, arcs = 0U, req_edges = 0U, req_arcs = 0U;
  for (auto const& l : inst.links) {
    (l.kind == link_kind::edge ? edges : arcs) += 1U;
    if (l.required) {
      (l.kind == link_kind::edge ? req_edges : req_arcs) += 1U;
    }
  }
  auto const check_count = [&](char const* k, std::uint32_t actual) {
    auto const& [declared, at] = counts.at(k);
    if (declared != actual) {
      throw parse_error{at, std::string{k} + " is " + std::to_string(declared) +
                                " but the file lists " + std::to_string(actual)};
    }
  };
  check_count("EDGES", edges);
  check_count("ARCS", arcs);
  check_count("REQUIRED_EDGES", req_edges);
  check_count("REQUIRED_ARCS", req_arcs);

  auto const build = [&](raw_speed const& s) {
    try {
      return pl_time::speed_function{s.breakpoints, s.speeds, inst.duration_limit};
    } catch (invariant_violation const& e) {
      throw parse_error{s.line, e.what()};
    }
  };
  for (auto const& [key, s] : travel) {
    if (key.first >= inst.links.size() ||
        key.second >= inst.links[key.first].direction_count()) {
      throw parse_error{s.line, "speed for an unknown oriented link"};
    }
  }
  for (auto const& [key, s] : service) {
    if (key.first >= inst.links.size() ||
        key.second >= inst.links[key.first].direction_count()) {
      throw parse_error{s.line, "service speed for an unknown oriented link"};
    }
  }
  for (auto& l : inst.links) {
    for (auto d = 0U; d != 2U; ++d) {
      auto const t = travel.find({l.id, d});
      l.travel[d] = t == end(travel)
                        ? pl_time::speed_function::constant(1.0, inst.duration_limit)
                        : build(t->second);
      auto const s = service.find({l.id, d});
      l.service[d] = s == end(service) ? l.travel[d] : build(s->second);
    }
  }

  index_services(inst);
  make_demands_integral(inst);
  validate(inst);
  return inst;
}

std::string serialize_instance(instance const& inst) {
  std::string out;
  auto const field = [&](char const* key, double value) {
    out += key;
    out += ' ';
    put(out, value);
    out += '\n';
  };
  std::uint32_t edges = 0U, arcs = 0U, req_edges = 0U, req_arcs = 0U;
  for (auto const& l : inst.links) {
    (l.kind == link_kind::edge ? edges : arcs) += 1U;
    if (l.required) {
      (l.kind == link_kind::edge ? req_edges : req_arcs) += 1U;
    }
  }
  out += "NAME " + (inst.name.empty() ? std::string{"unnamed"} : inst.name) + '\n';
  field("VERTICES", inst.vertex_count);
  field("EDGES", edges);
  field("ARCS", arcs);
  field("REQUIRED_EDGES", req_edges);
  field("REQUIRED_ARCS", req_arcs);
  field("VEHICLES", inst.fleet);
  field("CAPACITY", inst.capacity);
  field("DURATION_LIMIT", inst.duration_limit);

  for (auto const& l : inst.links) {
    out += l.kind == link_kind::edge ? "E " : "A ";
    out += std::to_string(l.id) + ' ' + std::to_string(l.from) + ' ' +
           std::to_string(l.to) + ' ';
    put(out, l.distance);
    out += ' ';
    if (l.required) {
      put(out, l.demand);
    } else {
      out += '-';
    }
    out += '\n';
  }

  auto const speed_line = [&](char const* key, link const& l, unsigned d,
                              pl_time::speed_function const& v) {
    out += key;
    out += ' ' + std::to_string(l.id) + (d == 0U ? " + " : " - ") +
           std::to_string(v.piece_count());
    for (auto const t : v.breakpoints()) {
      out += ' ';
      put(out, t);
    }
    for (auto const s : v.speeds()) {
      out += ' ';
      put(out, s);
    }
    out += '\n';
  };
  for (auto const& l : inst.links) {
    for (auto d = 0U; d != l.direction_count(); ++d) {
      speed_line("SPEED", l, d, l.travel[d]);
    }
  }
  for (auto const& l : inst.links) {
    for (auto d = 0U; d != l.direction_count(); ++d) {
      if (!(l.service[d] == l.travel[d])) {
        speed_line("SERVICE_SPEED", l, d, l.service[d]);
      }
    }
  }
  return out;
}

instance parse_instance(std::string_view text, file_format format) {
  return format == file_format::td_native ? parse_native(text)
                                          : parse_classic(text);
}

file_format guess_format(std::string const& path, std::string_view text) {
  auto const ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".dat") || ends_with(".txt")) {
    return file_format::classic_carp;
  }
  if (ends_with(".td") || ends_with(".tdn")) {
    return file_format::td_native;
  }
  return text.find("LISTA_") != std::string_view::npos ||
                 text.find("NOMBRE") != std::string_view::npos
             ? file_format::classic_carp
             : file_format::td_native;
}

instance load_instance(std::string const& path, file_format format) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw error{"cannot open " + path};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), format);
}

}  // namespace tdarc::network
