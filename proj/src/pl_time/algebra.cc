#include <algorithm>
#include <charconv>
#include <cmath>

#include "tdarc/pl_time.h"

namespace tdarc::pl_time {

namespace {

struct point {
  double t, value;
};

// merge tolerance for collinear pieces, relative to the time tolerance
constexpr auto kMergeFactor = 1e-3;

double scale_of(arrival_function const& f, arrival_function const& g) {
  return std::max(f.empty() ? 0.0 : f.tolerance(),
                  g.empty() ? 0.0 : g.tolerance());
}

arrival_function from_points(std::vector<point> const& pts, double time_tol,
                             double value_tol) {
  std::vector<point> dedup;
  dedup.reserve(pts.size());
  for (auto i = 0U; i != pts.size(); ++i) {
    auto const& p = pts[i];
    if (!dedup.empty() && p.t - dedup.back().t < time_tol) {
      if (i + 1U == pts.size() && dedup.size() > 1U) {
        dedup.back() = p;
      }
      continue;
    }
    dedup.push_back(p);
  }
  for (auto i = 1U; i < dedup.size(); ++i) {
    dedup[i].value = std::max(dedup[i].value, dedup[i - 1].value);
  }
  if (dedup.size() < 2U) {
    return {};
  }

  std::vector<double> times, values;
  times.push_back(dedup.front().t);
  values.push_back(dedup.front().value);
  auto anchor = 0U;
  for (auto j = anchor + 2U; j <= dedup.size(); ++j) {
    auto ok = j < dedup.size();
    if (ok) {
      auto const& a = dedup[anchor];
      auto const& c = dedup[j];
      auto const slope = (c.value - a.value) / (c.t - a.t);
      for (auto k = anchor + 1U; k != j && ok; ++k) {
        auto const chord = a.value + (dedup[k].t - a.t) * slope;
        ok = std::abs(dedup[k].value - chord) <= value_tol;
      }
    }
    if (!ok) {
      anchor = j - 1U;
      times.push_back(dedup[anchor].t);
      values.push_back(dedup[anchor].value);
    }
  }
  return arrival_function{std::move(times), std::move(values)};
}

double inverse(arrival_function const& f, double y) {
  auto const vals = f.values();
  auto const ts = f.times();
  auto const it = std::lower_bound(begin(vals), end(vals), y);
  auto k = static_cast<std::size_t>(it - begin(vals));
  if (k == 0U) {
    return ts.front();
  }
  if (k >= vals.size()) {
    return ts.back();
  }
  --k;
  auto const dv = vals[k + 1] - vals[k];
  if (dv <= 0.0) {
    return ts[k];
  }
  return std::clamp(ts[k] + (y - vals[k]) * (ts[k + 1] - ts[k]) / dv, ts[k],
                    ts[k + 1]);
}

}  // namespace

arrival_function simplify(arrival_function const& f, double tolerance) {
  if (f.empty()) {
    return f;
  }
  std::vector<point> pts;
  pts.reserve(f.times().size());
  for (auto i = 0U; i != f.times().size(); ++i) {
    pts.push_back({f.times()[i], f.values()[i]});
  }
  return from_points(pts, f.tolerance(), tolerance);
}

arrival_function lower_envelope(arrival_function const& f,
                                arrival_function const& g) {
  if (f.empty()) {
    return g;
  }
  if (g.empty()) {
    return f;
  }
  std::vector<double> xs;
  xs.reserve(f.times().size() + g.times().size());
  std::merge(begin(f.times()), end(f.times()), begin(g.times()),
             end(g.times()), std::back_inserter(xs));
  xs.erase(std::unique(begin(xs), end(xs)), end(xs));

  std::vector<point> pts;
  pts.reserve(xs.size() * 2U);
  auto prev_x = 0.0, prev_f = kInfinity, prev_g = kInfinity;
  for (auto i = 0U; i != xs.size(); ++i) {
    auto const x = xs[i];
    auto const fv = f(x);
    auto const gv = g(x);
    if (i != 0U && std::isfinite(prev_f) && std::isfinite(prev_g) &&
        std::isfinite(fv) && std::isfinite(gv)) {
      auto const d0 = prev_f - prev_g;
      auto const d1 = fv - gv;
      if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
        auto const r = d0 / (d0 - d1);
        auto const xc = prev_x + (x - prev_x) * r;
        pts.push_back({xc, prev_f + (fv - prev_f) * r});
      }
    }
    pts.push_back({x, std::min(fv, gv)});
    prev_x = x;
    prev_f = fv;
    prev_g = gv;
  }
  auto const tol = scale_of(f, g);
  return from_points(pts, tol, kMergeFactor * tol);
}

arrival_function compose(arrival_function const& outer,
                         arrival_function const& inner) {
  if (outer.empty() || inner.empty()) {
    return {};
  }
  auto const tol = scale_of(outer, inner);
  auto const ob = outer.domain_begin();
  auto const oe = outer.domain_end();
  auto const it = inner.times();
  auto const iv = inner.values();

  if (iv.back() < ob - tol || iv.front() > oe + tol) {
    return {};
  }
  auto const lo = iv.front() < ob - tol ? inverse(inner, ob) : it.front();
  auto const hi = iv.back() > oe + tol ? inverse(inner, oe) : it.back();
  if (!(hi - lo >= tol)) {
    return {};
  }

  struct sample {
    double t, y;
  };
  std::vector<sample> samples;
  samples.push_back({lo, std::clamp(inner(lo), ob, oe)});
  auto const y_lo = samples.front().y;
  auto const y_hi = std::clamp(inner(hi), ob, oe);
  auto const ot = outer.times();
  auto oi = static_cast<std::size_t>(
      std::upper_bound(begin(ot), end(ot), y_lo) - begin(ot));
  for (auto k = 0U; k != it.size(); ++k) {
    if (!(it[k] > lo && it[k] < hi)) {
      continue;
    }
    // outer breakpoints hit before this inner breakpoint
    for (; oi < ot.size() && ot[oi] < iv[k] && ot[oi] < y_hi; ++oi) {
      samples.push_back({inverse(inner, ot[oi]), ot[oi]});
    }
    samples.push_back({it[k], std::clamp(iv[k], ob, oe)});
  }
  for (; oi < ot.size() && ot[oi] < y_hi; ++oi) {
    samples.push_back({inverse(inner, ot[oi]), ot[oi]});
  }
  samples.push_back({hi, y_hi});

  std::stable_sort(begin(samples), end(samples),
                   [](sample const& a, sample const& b) { return a.t < b.t; });
  std::vector<point> pts;
  pts.reserve(samples.size());
  for (auto const& s : samples) {
    if (s.t < lo || s.t > hi) {
      continue;
    }
    pts.push_back({s.t, outer(s.y)});
  }
  return from_points(pts, tol, kMergeFactor * tol);
}

double min_gap(arrival_function const& f) {
  auto gap = kInfinity;
  for (auto i = 0U; i != f.times().size(); ++i) {
    gap = std::min(gap, f.values()[i] - f.times()[i]);
  }
  return gap;
}

double max_difference(arrival_function const& f, arrival_function const& g) {
  if (f.empty() || g.empty()) {
    return f.empty() && g.empty() ? 0.0 : kInfinity;
  }
  auto const tol = scale_of(f, g);
  if (std::abs(f.domain_begin() - g.domain_begin()) > tol ||
      std::abs(f.domain_end() - g.domain_end()) > tol) {
    return kInfinity;
  }
  auto const lo = std::max(f.domain_begin(), g.domain_begin());
  auto const hi = std::min(f.domain_end(), g.domain_end());
  auto diff = 0.0;
  auto const check = [&](double t) {
    t = std::clamp(t, lo, hi);
    diff = std::max(diff, std::abs(f(t) - g(t)));
  };
  for (auto const t : f.times()) {
    check(t);
  }
  for (auto const t : g.times()) {
    check(t);
  }
  return diff;
}

bool approximately_equal(arrival_function const& f, arrival_function const& g,
                         double tolerance) {
  return max_difference(f, g) <= tolerance;
}

std::string to_json(arrival_function const& f) {
  std::string out = "[";
  char buf[64];
  auto const put = [&](double x) {
    auto const r = std::to_chars(buf, buf + sizeof(buf), x);
    out.append(buf, r.ptr);
  };
  for (auto i = 0U; i != f.times().size(); ++i) {
    if (i != 0U) {
      out += ',';
    }
    out += '[';
    put(f.times()[i]);
    out += ',';
    put(f.values()[i]);
    out += ']';
  }
  out += ']';
  return out;
}

}  // namespace tdarc::pl_time
