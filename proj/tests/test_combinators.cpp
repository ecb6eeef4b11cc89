#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fuse/combinators.hpp"
#include "fuse/random.hpp"
#include "helpers.hpp"

using fuse::CalibrationPolicy;
using fuse::CombinedEstimate;
using fuse::Interval;
using fuse::SourceEstimate;
using fuse::VirtualSamplingDiagnostics;
using testutil::close;
using testutil::close_at_scale;
using testutil::sources;
using testutil::src;

namespace {

std::vector<Interval> to_intervals(const std::vector<SourceEstimate>& list,
                                   CalibrationPolicy policy = {}) {
  std::vector<Interval> out;
  for (const auto& s : list) out.push_back(fuse::to_interval(s, policy));
  return out;
}

std::vector<SourceEstimate> draw_sources(std::mt19937_64& rng, int k) {
  std::vector<SourceEstimate> out;
  for (int i = 0; i < k; ++i) {
    out.push_back(src(fuse::uniform_real(rng, -5.0, 5.0), fuse::log_uniform(rng, 0.2, 5.0)));
  }
  return out;
}

}  // namespace

TEST_CASE("virtual sampling: two-source worked example") {
  auto [est, diag] = fuse::combine_virtual_sampling(sources({{0, 1}, {1, 2}}));
  CHECK(close(est.value, 0.2));
  CHECK(close(est.uncertainty, std::sqrt(0.928)));
  CHECK(diag.v_star == 1.0);
  REQUIRE(diag.sample_sizes.size() == 2);
  CHECK(diag.sample_sizes[0] == 1.0);
  CHECK(diag.sample_sizes[1] == 0.25);
  CHECK(close(diag.n, 1.25));
  REQUIRE(diag.u_values.size() == 2);
  CHECK(close(diag.u_values[0], 1.04));
  CHECK(close(diag.u_values[1], 1.64));
  CHECK(close(diag.u_bar, 1.16));
  CHECK(close(diag.between_variance, 0.16));
  CHECK(close(diag.v, 0.928));
}

TEST_CASE("virtual sampling: single source is returned unchanged") {
  auto [est, diag] = fuse::combine_virtual_sampling(sources({{5, 3}}));
  CHECK(est.value == 5.0);
  CHECK(est.uncertainty == 3.0);
  CHECK(diag.n == 1.0);
  CHECK(close(diag.v, 9.0));
  CHECK(diag.between_variance == 0.0);
}

TEST_CASE("virtual sampling: unanimous sources shrink as root-K") {
  auto [est, diag] = fuse::combine_virtual_sampling(sources({{2, 1}, {2, 1}, {2, 1}, {2, 1}}));
  CHECK(close(est.value, 2.0));
  CHECK(close(est.uncertainty, 0.5));
  CHECK(close(diag.n, 4.0));
}

TEST_CASE("virtual sampling: a certain source dominates") {
  auto [est, diag] = fuse::combine_virtual_sampling(sources({{0, 0}, {10, 5}}));
  CHECK(est.value == 0.0);
  CHECK(est.uncertainty == 0.0);
  CHECK(diag.v_star == 0.0);
  REQUIRE(diag.sample_sizes.size() == 2);
  CHECK(diag.sample_sizes[0] == 1.0);
  CHECK(diag.sample_sizes[1] == 0.0);
}

TEST_CASE("virtual sampling: disagreeing certain sources") {
  // Two certain sources at 1 and 3: v* = 0, both fully weighted, the spread
  // alone contributes uncertainty.
  auto [est, diag] = fuse::combine_virtual_sampling(sources({{1, 0}, {3, 0}, {9, 4}}));
  CHECK(close(est.value, 2.0));
  CHECK(diag.sample_sizes[2] == 0.0);
  CHECK(close(diag.between_variance, 1.0));
  CHECK(close(est.uncertainty, std::sqrt(0.5)));
}

TEST_CASE("virtual sampling: infinitely uncertain sources are ignored") {
  auto [with_inf, diag] = fuse::combine_virtual_sampling(sources({{0, 1}, {7, fuse::kInfinity}}));
  auto [without, diag2] = fuse::combine_virtual_sampling(sources({{0, 1}}));
  CHECK(with_inf.value == without.value);
  CHECK(with_inf.uncertainty == without.uncertainty);
  CHECK(diag.sample_sizes[1] == 0.0);
  CHECK(diag.n == diag2.n);
}

TEST_CASE("virtual sampling: no informative sources") {
  CHECK_THROWS_AS(fuse::combine_virtual_sampling({}), fuse::NoInformativeSources);
  CHECK_THROWS_AS(fuse::combine_virtual_sampling(sources({{0, fuse::kInfinity}, {1, fuse::kInfinity}})),
                  fuse::NoInformativeSources);
}

TEST_CASE("virtual sampling: sigma scale round-trips through calibration") {
  // Reported uncertainties are half-widths of 95% intervals, roughly 1.96 sigma.
  CalibrationPolicy p{1.0 / 1.96};
  auto [est, diag] = fuse::combine_virtual_sampling(sources({{0, 1.96}}), p);
  CHECK(close(est.uncertainty, 1.96));
  CHECK(close(diag.v_star, 1.0));
}

TEST_CASE("weighted mean: frozen examples") {
  CombinedEstimate a = fuse::combine_weighted_mean(sources({{0, 1}, {1, 2}}));
  CHECK(close(a.value, 0.2));
  CHECK(close(a.uncertainty, std::sqrt(0.8)));

  CombinedEstimate b = fuse::combine_weighted_mean(sources({{3, 1}, {3, 7}}));
  CHECK(close(b.value, 3.0));

  CombinedEstimate c = fuse::combine_weighted_mean(sources({{0, 1}, {1, fuse::kInfinity}}));
  CHECK(c.value == 0.0);
  CHECK(close(c.uncertainty, 1.0));
}

TEST_CASE("weighted mean: certain sources split the weight evenly") {
  CombinedEstimate est = fuse::combine_weighted_mean(sources({{2, 0}, {4, 0}, {9, 5}}));
  CHECK(close(est.value, 3.0));
  CHECK(est.uncertainty == 0.0);
}

TEST_CASE("weighted mean: undefined without informative sources") {
  CHECK_THROWS_AS(fuse::combine_weighted_mean({}), fuse::NoInformativeSources);
  CHECK_THROWS_AS(fuse::combine_weighted_mean(sources({{1, fuse::kInfinity}})),
                  fuse::NoInformativeSources);
}

TEST_CASE("unweighted mean: frozen examples") {
  CombinedEstimate a = fuse::combine_unweighted_mean(sources({{0, 1}, {1, 2}}));
  CHECK(close(a.value, 0.5));
  CHECK(close(a.uncertainty, 1.5));

  CombinedEstimate b = fuse::combine_unweighted_mean(sources({{2, 1}, {2, 1}}));
  CHECK(close(b.value, 2.0));
  CHECK(close(b.uncertainty, 1.0));
}

TEST_CASE("unweighted mean: ignores precision when averaging values") {
  CombinedEstimate um = fuse::combine_unweighted_mean(sources({{0, 1}, {1, 0.001}}));
  auto [vs, diag] = fuse::combine_virtual_sampling(sources({{0, 1}, {1, 0.001}}));
  CHECK(close(um.value, 0.5));
  CHECK(vs.value > 0.99);  // the near-certain source should dominate
}

TEST_CASE("unweighted mean: infinite uncertainties average over the finite ones") {
  CombinedEstimate a = fuse::combine_unweighted_mean(sources({{0, 1}, {1, fuse::kInfinity}}));
  CHECK(close(a.value, 0.5));
  CHECK(close(a.uncertainty, 1.0));

  CombinedEstimate b = fuse::combine_unweighted_mean(sources({{0, fuse::kInfinity}, {2, fuse::kInfinity}}));
  CHECK(close(b.value, 1.0));
  CHECK(b.uncertainty == fuse::kInfinity);

  CHECK_THROWS_AS(fuse::combine_unweighted_mean({}), fuse::NoInformativeSources);
}

TEST_CASE("intersection: frozen examples") {
  Interval a = fuse::combine_intersection(to_intervals(sources({{1, 1}, {2, 1}})));
  CHECK(close(a.midpoint, 1.5));
  CHECK(close(a.half_length, 0.5));

  Interval b = fuse::combine_intersection(to_intervals(sources({{0, 2}, {0, 1}})));
  CHECK(close(b.midpoint, 0.0, 1e-12, 1e-15));
  CHECK(close(b.half_length, 1.0));

  CHECK_THROWS_AS(fuse::combine_intersection(to_intervals(sources({{0, 0.5}, {2, 0.5}}))),
                  fuse::EmptyIntersection);
}

TEST_CASE("intersection: unbounded intervals impose no constraint") {
  Interval a = fuse::combine_intersection(to_intervals(sources({{0, fuse::kInfinity}, {1, 1}})));
  CHECK(a.midpoint == 1.0);
  CHECK(a.half_length == 1.0);

  // Every interval unbounded: the whole line, centred on the midpoint mean.
  Interval b = fuse::combine_intersection(to_intervals(sources({{1, fuse::kInfinity}, {3, fuse::kInfinity}})));
  CHECK(close(b.midpoint, 2.0));
  CHECK(b.half_length == fuse::kInfinity);

  CHECK_THROWS_AS(fuse::combine_intersection({}), fuse::NoInformativeSources);
}

TEST_CASE("cover: frozen examples") {
  Interval a = fuse::combine_cover(to_intervals(sources({{1, 1}, {2, 1}})));
  CHECK(close(a.midpoint, 1.5));
  CHECK(close(a.half_length, 1.5));

  Interval b = fuse::combine_cover(to_intervals(sources({{0, 2}, {0, 1}})));
  CHECK(close(b.midpoint, 0.0, 1e-12, 1e-15));
  CHECK(close(b.half_length, 2.0));

  CHECK_THROWS_AS(fuse::combine_cover(to_intervals(sources({{0, fuse::kInfinity}, {1, 1}}))),
                  fuse::InfiniteCover);
  CHECK_THROWS_AS(fuse::combine_cover({}), fuse::NoInformativeSources);
}

TEST_CASE("decompose splits resultant variance into floor and spread") {
  auto [est, diag] = fuse::combine_virtual_sampling(sources({{0, 1}, {1, 2}}));
  auto [v_star, between] = fuse::decompose(diag);
  CHECK(v_star == 1.0);
  CHECK(close(between, 0.16));

  auto [est2, diag2] = fuse::combine_virtual_sampling(sources({{2, 1}, {2, 1}, {2, 1}}));
  auto [vs2, between2] = fuse::decompose(diag2);
  CHECK(close(vs2, 1.0));
  CHECK(close_at_scale(between2, 0.0, 1.0));

  auto [est3, diag3] = fuse::combine_virtual_sampling(sources({{5, 3}}));
  auto [vs3, between3] = fuse::decompose(diag3);
  CHECK(close(vs3, 9.0));
  CHECK(between3 == 0.0);
}

TEST_CASE("evaluate_method reports undefined outcomes with reasons") {
  auto disjoint = sources({{0, 0.5}, {2, 0.5}});
  fuse::MethodOutcome out = fuse::evaluate_method(fuse::Method::Intersect, disjoint);
  CHECK_FALSE(out.defined);
  CHECK(out.reason == "empty intersection");

  fuse::MethodOutcome cover = fuse::evaluate_method(fuse::Method::Cover, sources({{0, fuse::kInfinity}}));
  CHECK_FALSE(cover.defined);
  CHECK(cover.reason == "infinite cover");

  fuse::MethodOutcome ok = fuse::evaluate_method(fuse::Method::VirtualSampling, disjoint);
  CHECK(ok.defined);
  CHECK(ok.reason.empty());
}

TEST_CASE("evaluate_method applies the calibration to interval methods") {
  // At sigma scale 2 the calibrated intervals are [-2,2] and [-3,5]; their
  // intersection [-2,2] converts back to reported uncertainty 1.
  CalibrationPolicy p{2.0};
  fuse::MethodOutcome out = fuse::evaluate_method(fuse::Method::Intersect, sources({{0, 1}, {1, 2}}), p);
  REQUIRE(out.defined);
  CHECK(close(out.estimate.value, 0.0, 1e-12, 1e-15));
  CHECK(close(out.estimate.uncertainty, 1.0));
}

TEST_CASE("combinators reject malformed sources") {
  CHECK_THROWS_AS(fuse::combine_virtual_sampling(sources({{0, -1}})), std::invalid_argument);
  CHECK_THROWS_AS(fuse::combine_weighted_mean(sources({{fuse::kInfinity, 1}})), std::invalid_argument);
}

TEST_CASE("property: resultant value matches the inverse-variance mean") {
  for (int i = 0; i < 200; ++i) {
    std::mt19937_64 rng = fuse::case_rng(11, static_cast<uint64_t>(i));
    auto list = draw_sources(rng, fuse::uniform_int(rng, 1, 6));
    auto [vs, diag] = fuse::combine_virtual_sampling(list);
    CombinedEstimate wm = fuse::combine_weighted_mean(list);
    CHECK(close_at_scale(vs.value, wm.value, 5.0));
  }
}

TEST_CASE("property: translation and scale equivariance") {
  for (int i = 0; i < 200; ++i) {
    std::mt19937_64 rng = fuse::case_rng(12, static_cast<uint64_t>(i));
    auto list = draw_sources(rng, fuse::uniform_int(rng, 1, 6));
    double shift = fuse::uniform_real(rng, -20.0, 20.0);
    double scale = fuse::log_uniform(rng, 0.1, 10.0);

    auto shifted = list;
    for (auto& s : shifted) s.value += shift;
    auto scaled = list;
    for (auto& s : scaled) {
      s.value *= scale;
      s.uncertainty *= scale;
    }

    auto [base, d0] = fuse::combine_virtual_sampling(list);
    auto [tr, d1] = fuse::combine_virtual_sampling(shifted);
    auto [sc, d2] = fuse::combine_virtual_sampling(scaled);

    CHECK(close_at_scale(tr.value, base.value + shift, 25.0, 1e-11));
    CHECK(close(tr.uncertainty, base.uncertainty, 1e-11));
    CHECK(close_at_scale(sc.value, scale * base.value, scale * 5.0, 1e-11));
    CHECK(close(sc.uncertainty, scale * base.uncertainty, 1e-11));
  }
}

TEST_CASE("property: source order never changes the result") {
  for (int i = 0; i < 200; ++i) {
    std::mt19937_64 rng = fuse::case_rng(13, static_cast<uint64_t>(i));
    auto list = draw_sources(rng, fuse::uniform_int(rng, 2, 6));
    auto shuffled = list;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);

    auto [a, da] = fuse::combine_virtual_sampling(list);
    auto [b, db] = fuse::combine_virtual_sampling(shuffled);
    CHECK(close_at_scale(a.value, b.value, 5.0));
    CHECK(close(a.uncertainty, b.uncertainty));

    CombinedEstimate wa = fuse::combine_weighted_mean(list);
    CombinedEstimate wb = fuse::combine_weighted_mean(shuffled);
    CHECK(close_at_scale(wa.value, wb.value, 5.0));
    CHECK(close(wa.uncertainty, wb.uncertainty));
  }
}

TEST_CASE("property: virtual sample sizes live in [0,1] and peak at 1") {
  for (int i = 0; i < 200; ++i) {
    std::mt19937_64 rng = fuse::case_rng(14, static_cast<uint64_t>(i));
    auto list = draw_sources(rng, fuse::uniform_int(rng, 2, 6));
    auto [est, diag] = fuse::combine_virtual_sampling(list);

    double max_n = 0.0;
    for (double ni : diag.sample_sizes) {
      CHECK(ni >= 0.0);
      CHECK(ni <= 1.0);
      max_n = std::max(max_n, ni);
    }
    CHECK(max_n == 1.0);  // the most certain source samples at full weight
    CHECK(diag.n > 1.0);  // two or more informative sources always add up
    CHECK(close(diag.n, std::accumulate(diag.sample_sizes.begin(), diag.sample_sizes.end(), 0.0)));
  }
}

TEST_CASE("property: variance decomposition identity") {
  for (int i = 0; i < 200; ++i) {
    std::mt19937_64 rng = fuse::case_rng(15, static_cast<uint64_t>(i));
    auto list = draw_sources(rng, fuse::uniform_int(rng, 1, 6));
    auto [est, diag] = fuse::combine_virtual_sampling(list);

    CHECK(close(diag.u_bar, diag.v_star + diag.between_variance));
    CHECK(close(diag.v, diag.u_bar / diag.n));
    if (list.size() >= 2) CHECK(diag.v < diag.u_bar);
    CHECK(diag.v <= diag.u_bar);
  }
}

TEST_CASE("property: resultant value stays inside the source range") {
  for (int i = 0; i < 200; ++i) {
    std::mt19937_64 rng = fuse::case_rng(16, static_cast<uint64_t>(i));
    auto list = draw_sources(rng, fuse::uniform_int(rng, 1, 6));
    double lo = fuse::kInfinity, hi = -fuse::kInfinity;
    for (const auto& s : list) {
      lo = std::min(lo, s.value);
      hi = std::max(hi, s.value);
    }
    auto [est, diag] = fuse::combine_virtual_sampling(list);
    CHECK(est.value >= lo - 1e-12);
    CHECK(est.value <= hi + 1e-12);
  }
}

TEST_CASE("property: K unanimous sources contract uncertainty as root-K") {
  for (int k : {1, 2, 4, 9, 16}) {
    std::vector<SourceEstimate> list(static_cast<size_t>(k), src(0.7, 1.3));
    auto [est, diag] = fuse::combine_virtual_sampling(list);
    CHECK(close(est.value, 0.7));
    CHECK(close(est.uncertainty, 1.3 / std::sqrt(static_cast<double>(k))));
  }
}

TEST_CASE("near-agreeing equal sources beat both inputs") {
  // Two sources that almost agree: the resultant is more certain than either,
  // unlike a plain apportionment of the smaller uncertainty.
  auto [est, diag] = fuse::combine_virtual_sampling(sources({{0.0, 1.0}, {0.1, 1.0}}));
  CHECK(est.uncertainty < 1.0);
  CHECK(close(est.uncertainty, std::sqrt((1.0 + 0.0025) / 2.0)));
}

TEST_CASE("property: intersection nests inside every source interval") {
  int defined = 0;
  for (int i = 0; i < 300; ++i) {
    std::mt19937_64 rng = fuse::case_rng(17, static_cast<uint64_t>(i));
    auto list = draw_sources(rng, fuse::uniform_int(rng, 2, 5));
    auto intervals = to_intervals(list);
    Interval result{};
    try {
      result = fuse::combine_intersection(intervals);
    } catch (const fuse::EmptyIntersection&) {
      continue;
    }
    ++defined;
    double min_half = fuse::kInfinity;
    for (const auto& iv : intervals) {
      CHECK(result.lower() >= iv.lower() - 1e-12);
      CHECK(result.upper() <= iv.upper() + 1e-12);
      min_half = std::min(min_half, iv.half_length);
    }
    CHECK(result.half_length <= min_half + 1e-12);
  }
  CHECK(defined > 0);
}

TEST_CASE("property: cover contains every source interval") {
  for (int i = 0; i < 300; ++i) {
    std::mt19937_64 rng = fuse::case_rng(18, static_cast<uint64_t>(i));
    auto list = draw_sources(rng, fuse::uniform_int(rng, 2, 5));
    auto intervals = to_intervals(list);
    Interval result = fuse::combine_cover(intervals);
    double max_half = 0.0;
    for (const auto& iv : intervals) {
      CHECK(result.lower() <= iv.lower() + 1e-12);
      CHECK(result.upper() >= iv.upper() - 1e-12);
      max_half = std::max(max_half, iv.half_length);
    }
    CHECK(result.half_length >= max_half - 1e-12);
  }
}
