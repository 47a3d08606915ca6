#include "gwregion/surface.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "gwregion/dsbs.hpp"
#include "gwregion/errors.hpp"
#include "gwregion/gaussian.hpp"

namespace gwregion::surface {
namespace {

constexpr std::array<std::string_view, 9> kQuantityNames{
    "increasing", "lower", "upper", "rd", "psi-lower", "phi-upper", "phi-q", "conv-phi", "lossy"};

[[noreturn]] void unsupported(const Query& q) {
  throw DomainError("quantity '" + std::string(to_string(q.which)) +
                    "' is not available for the " + std::string(to_string(q.source)) + " source");
}

EnvelopeSample eval_dsbs(const Query& query, double x, double y) {
  const dsbs::DsbsSource src(query.param);
  const double p = query.param;
  EnvelopeSample s{x, y, std::nullopt, {}, std::nullopt, std::nullopt};
  switch (query.which) {
    case Quantity::increasing:
      s.value = dsbs::upsilon_star(src, x, y);
      s.region = dsbs::to_string(dsbs::classify_point(src, x, y));
      break;
    case Quantity::lower:
    case Quantity::upper: {
      const auto label = dsbs::classify_point(src, x, y, dsbs::Level::fine);
      s.region = dsbs::to_string(label);
      if (label != dsbs::RegionLabel::OUTSIDE) {
        s.value = query.which == Quantity::lower ? dsbs::lower_envelope_dsbs(src, x, y)
                                                 : dsbs::upper_envelope_dsbs(src, x, y);
      }
      break;
    }
    case Quantity::rd: {
      s.value = dsbs::rate_distortion_dsbs(src, x, y);
      break;
    }
    case Quantity::psi_lower: {
      s.value = ot::psi_lower_dsbs(p, x, y);
      s.region = dsbs::to_string(dsbs::classify_point(src, x, y));
      break;
    }
    case Quantity::phi_upper: {
      s.value = ot::phi_upper(p, x, y);
      const double a = info::binary_entropy_inv(1.0 - x);
      const double b = 1.0 - info::binary_entropy_inv(1.0 - y);
      s.coupling = ot::coupling_from(a, b, ot::q_opt_closed_form(a, b, p));
      break;
    }
    case Quantity::phi_q:
      s.value = ot::phi_q_dsbs(p, query.q, x);
      break;
    case Quantity::conv_phi: {
      auto r = ot::conv_phi_lower(p, x, y);
      s.value = r.value;
      s.region = ot::to_string(r.region);
      s.mixture = std::move(r.mixture);
      break;
    }
    case Quantity::lossy: {
      s.value = dsbs::lossy_gw_rate_dsbs(src, x, y, query.d1, query.d2);
      const double a = std::max(0.0, info::binary_capacity(query.d1) - x);
      const double b = std::max(0.0, info::binary_capacity(query.d2) - y);
      s.region = dsbs::to_string(dsbs::classify_point(src, a, b));
      break;
    }
  }
  return s;
}

EnvelopeSample eval_gaussian(const Query& query, double x, double y) {
  const gaussian::GaussianSource src(query.param);
  EnvelopeSample s{x, y, std::nullopt, {}, std::nullopt, std::nullopt};
  switch (query.which) {
    case Quantity::increasing:
      s.value = gaussian::upsilon_g_star(src, x, y);
      s.region = gaussian::to_string(gaussian::classify_point_g(src, x, y));
      break;
    case Quantity::upper:
      s.value = gaussian::upper_envelope_gaussian(src, x, y);
      break;
    case Quantity::psi_lower:
      s.value = gaussian::psi_lower_gaussian(src, x, y);
      break;
    case Quantity::phi_upper:
      s.value = gaussian::phi_upper_gaussian(src, x, y);
      break;
    case Quantity::phi_q:
      s.value = gaussian::phi_q_gaussian(src, query.q, x);
      break;
    case Quantity::lossy: {
      s.value = gaussian::lossy_gw_rate_gaussian(src, x, y, query.d1, query.d2);
      break;
    }
    default:
      unsupported(query);
  }
  return s;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  return kind == SourceKind::dsbs ? "dsbs" : "gaussian";
}

std::string_view to_string(Quantity which) { return kQuantityNames[static_cast<int>(which)]; }

SourceKind parse_source(std::string_view name) {
  if (name == "dsbs") return SourceKind::dsbs;
  if (name == "gaussian") return SourceKind::gaussian;
  throw DomainError("unknown source '" + std::string(name) + "'");
}

Quantity parse_quantity(std::string_view name) {
  for (std::size_t i = 0; i < kQuantityNames.size(); ++i) {
    if (kQuantityNames[i] == name) return static_cast<Quantity>(i);
  }
  throw DomainError("unknown quantity '" + std::string(name) + "'");
}

info::LogBase units(SourceKind kind) {
  return kind == SourceKind::dsbs ? info::LogBase::bits : info::LogBase::nats;
}

EnvelopeSample evaluate(const Query& query, double x, double y) {
  return query.source == SourceKind::dsbs ? eval_dsbs(query, x, y) : eval_gaussian(query, x, y);
}

double axis_max(const Query& query) {
  if (query.which == Quantity::rd) return 0.5;
  return query.source == SourceKind::dsbs ? 1.0 : 2.0;
}

std::vector<EnvelopeSample> sample_surface(const Query& query, int steps) {
  if (steps < 2) throw DomainError("steps must be >= 2");
  const double hi = axis_max(query);
  std::vector<EnvelopeSample> rows;
  rows.reserve(static_cast<std::size_t>(steps) * steps);
  for (int i = 0; i < steps; ++i) {
    const double x = hi * i / (steps - 1);
    for (int j = 0; j < steps; ++j) rows.push_back(evaluate(query, x, hi * j / (steps - 1)));
  }
  return rows;
}

}  // namespace gwregion::surface
