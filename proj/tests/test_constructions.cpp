#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isopart/constructions.hpp"
#include "isopart/network.hpp"

using namespace isopart;

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_verified(const ArcPartition& p) {
  auto diag = validate_topology(p);
  for (const auto& v : diag.violations) MESSAGE(v);
  CHECK(diag.valid());
  auto rep = check_stationarity(p);
  CHECK(rep.pass);
  CHECK(rep.max_angle_residual <= 1e-9);
  CHECK(rep.max_curvature_residual <= 1e-9);
  auto pr = solve_pressures(p);
  CHECK(pr.residual <= 1e-10);
}

double measured_area(const ArcPartition& p, const std::string& label) {
  auto m = region_measures(p, p.window_radius);
  return m.region_areas[p.region_index(label)];
}
}  // namespace

TEST_CASE("make_cone halfplane") {
  auto p = make_cone(ConeKind::HalfPlane);
  check_verified(p);
  auto m = region_measures(p, 1.0);
  CHECK(m.perimeter == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(classify_far_field(p).kind == FarField::Kind::Line);
}

TEST_CASE("make_cone triple junction") {
  auto p = make_cone(ConeKind::TripleJunction);
  check_verified(p);
  auto m = region_measures(p, 1.0);
  CHECK(m.perimeter == doctest::Approx(3.0).epsilon(1e-14));
  for (const auto& e : p.edges) CHECK(e.kappa == 0.0);
  CHECK(classify_far_field(p).kind == FarField::Kind::TripleRays);
}

TEST_CASE("make_lens geometry and measures") {
  auto p = make_lens(1.0);
  check_verified(p);
  CHECK(measured_area(p, "lens") == doctest::Approx(1.0).epsilon(1e-10));
  // Frozen from the closed form r = sqrt(m / (2 pi/3 - sqrt(3)/2)).
  double r = 0.9022677875844296;
  CHECK(p.edges[0].kappa == doctest::Approx(1.0 / r).epsilon(1e-12));
  double arcs = 0.0;
  for (const auto& e : p.edges)
    if (e.kappa != 0.0) arcs += arc_length(edge_geometry(p, e).arc);
  CHECK(arcs == doctest::Approx(3.7794104707279463).epsilon(1e-12));
  CHECK(classify_far_field(p).kind == FarField::Kind::Line);

  auto pr = solve_pressures(p);
  CHECK(pr.p[p.region_index("lens")] == doctest::Approx(1.0 / r).epsilon(1e-12));
  CHECK(pr.p[p.region_index("up")] == 0.0);
  CHECK(pr.residual <= 1e-12);
}

TEST_CASE("make_lens scaling: m=4 doubles r and perimeter") {
  auto p1 = make_lens(1.0);
  auto p4 = make_lens(4.0);
  CHECK(p4.edges[0].kappa == doctest::Approx(p1.edges[0].kappa / 2).epsilon(1e-13));
  double arcs1 = 0, arcs4 = 0;
  for (const auto& e : p1.edges)
    if (e.kappa != 0) arcs1 += arc_length(edge_geometry(p1, e).arc);
  for (const auto& e : p4.edges)
    if (e.kappa != 0) arcs4 += arc_length(edge_geometry(p4, e).arc);
  CHECK(arcs4 == doctest::Approx(2 * arcs1).epsilon(1e-13));
}

TEST_CASE("make_lens rejects nonpositive area") {
  CHECK_THROWS(make_lens(0.0));
  CHECK_THROWS(make_lens(-2.0));
}

TEST_CASE("make_double_bubble equal areas") {
  auto p = make_double_bubble(1.0, 1.0);
  check_verified(p);
  CHECK(measured_area(p, "b1") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(measured_area(p, "b2") == doctest::Approx(1.0).epsilon(1e-10));
  // Symmetric: middle interface straight.
  for (const auto& e : p.edges)
    if (e.left != p.region_index("out") && e.right != p.region_index("out"))
      CHECK(std::abs(e.kappa) < 1e-12);
  CHECK(classify_far_field(p).kind == FarField::Kind::Cluster);

  // Sharing a wall beats two separate unit disks.
  auto m = region_measures(p, p.window_radius);
  CHECK(m.perimeter < 4 * std::sqrt(kPi));
  CHECK(m.perimeter == doctest::Approx(6.359129254649765).epsilon(1e-9));
}

TEST_CASE("make_double_bubble unequal areas") {
  auto p = make_double_bubble(1.0, 2.0);
  check_verified(p);
  CHECK(measured_area(p, "b1") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(measured_area(p, "b2") == doctest::Approx(2.0).epsilon(1e-10));
  auto pr = solve_pressures(p);
  double k1 = pr.p[p.region_index("b1")];
  double k2 = pr.p[p.region_index("b2")];
  const ArcEdge* mid = nullptr;
  for (const auto& e : p.edges)
    if (e.left != p.region_index("out") && e.right != p.region_index("out")) mid = &e;
  REQUIRE(mid != nullptr);
  double k_mid = (mid->left == p.region_index("b1")) ? mid->kappa : -mid->kappa;
  CHECK(k_mid == doctest::Approx(k1 - k2).epsilon(1e-10));
  // Frozen from the pressure solve of this construction.
  CHECK(k1 == doctest::Approx(1.5147565236367953).epsilon(1e-7));
  CHECK(k2 == doctest::Approx(1.1688415681930838).epsilon(1e-7));
}

TEST_CASE("make_peanut equal areas") {
  auto p = make_peanut(1.0, 1.0);
  check_verified(p);
  CHECK(measured_area(p, "left") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(measured_area(p, "right") == doctest::Approx(1.0).epsilon(1e-10));
  // Mirror symmetry: middle interface straight, pressures equal.
  auto pr = solve_pressures(p);
  CHECK(pr.p[p.region_index("left")] ==
        doctest::Approx(pr.p[p.region_index("right")]).epsilon(1e-10));
  CHECK(pr.p[p.region_index("left")] ==
        doctest::Approx(std::sqrt(kPi / 2 - 0.5)).epsilon(1e-10));
  for (const auto& e : p.edges)
    if ((e.left == 0 && e.right == 1) || (e.left == 1 && e.right == 0))
      CHECK(std::abs(e.kappa) < 1e-10);
  CHECK(classify_far_field(p).kind == FarField::Kind::Line);
}

TEST_CASE("make_peanut unequal areas") {
  auto p = make_peanut(1.0, 2.0);
  check_verified(p);
  CHECK(measured_area(p, "left") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(measured_area(p, "right") == doctest::Approx(2.0).epsilon(1e-9));
  auto pr = solve_pressures(p);
  CHECK(pr.residual <= 1e-10);
  // Frozen from the pressure Newton of this construction (cross-checked with
  // an independent prototype of the junction equations).
  CHECK(pr.p[p.region_index("left")] == doctest::Approx(1.0047487376).epsilon(1e-6));
  CHECK(pr.p[p.region_index("right")] == doctest::Approx(0.7496070087).epsilon(1e-6));
  // Middle interface curvature equals the pressure difference (not straight).
  const ArcEdge* mid = nullptr;
  for (const auto& e : p.edges)
    if ((e.left == 0 && e.right == 1) || (e.left == 1 && e.right == 0)) mid = &e;
  REQUIRE(mid != nullptr);
  CHECK(std::abs(mid->kappa) > 0.1);
}

TEST_CASE("make_reuleaux") {
  auto p = make_reuleaux(1.0);
  check_verified(p);
  CHECK(measured_area(p, "core") == doctest::Approx(1.0).epsilon(1e-10));
  // All three arcs share one curvature.
  std::vector<double> ks;
  for (const auto& e : p.edges)
    if (e.kappa != 0.0) ks.push_back(e.kappa);
  REQUIRE(ks.size() == 3);
  CHECK(ks[0] == doctest::Approx(ks[1]).epsilon(1e-14));
  CHECK(ks[1] == doctest::Approx(ks[2]).epsilon(1e-14));
  CHECK(ks[0] == doctest::Approx(0.8395063567421380).epsilon(1e-10));
  CHECK(classify_far_field(p).kind == FarField::Kind::TripleRays);

  // Perimeter ratio under area scaling is exactly 2.
  auto p4 = make_reuleaux(4.0);
  auto m1 = region_measures(p, 3.0);
  auto m4 = region_measures(p4, 6.0);
  double arcs1 = 0, arcs4 = 0;
  for (size_t i = 0; i < p.edges.size(); ++i)
    if (p.edges[i].kappa != 0) arcs1 += m1.interface_lengths[i];
  for (size_t i = 0; i < p4.edges.size(); ++i)
    if (p4.edges[i].kappa != 0) arcs4 += m4.interface_lengths[i];
  CHECK(arcs4 == doctest::Approx(2 * arcs1).epsilon(1e-12));
}

TEST_CASE("constructor outputs are eventually flat") {
  for (const ArcPartition& p :
       {make_lens(1.0), make_peanut(1.0, 1.0), make_peanut(1.0, 2.0), make_reuleaux(1.0)}) {
    auto rep = check_stationarity(p);
    CHECK(rep.eventually_flat);
  }
}

TEST_CASE("prescribed areas reproduced across a grid of areas") {
  for (double m : {0.25, 1.0, 2.5}) {
    CHECK(measured_area(make_lens(m), "lens") == doctest::Approx(m).epsilon(1e-10));
    CHECK(measured_area(make_reuleaux(m), "core") == doctest::Approx(m).epsilon(1e-10));
  }
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 3.0}}) {
    auto p = make_peanut(a, b);
    CHECK(measured_area(p, "left") == doctest::Approx(a).epsilon(1e-9));
    CHECK(measured_area(p, "right") == doctest::Approx(b).epsilon(1e-9));
    auto d = make_double_bubble(a, b);
    CHECK(measured_area(d, "b1") == doctest::Approx(a).epsilon(1e-9));
    CHECK(measured_area(d, "b2") == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("perimeter is monotone in prescribed area") {
  auto arcs_of = [](const ArcPartition& p) {
    double total = 0;
    for (const auto& e : p.edges)
      if (e.kappa != 0 || (p.vertex(e.v_start).kind == Vertex::Kind::Interior &&
                           p.vertex(e.v_end).kind == Vertex::Kind::Interior))
        total += arc_length(edge_geometry(p, e).arc);
    return total;
  };
  double prev_lens = 0, prev_reuleaux = 0;
  for (double m : {0.5, 1.0, 1.5, 2.0}) {
    double lens = arcs_of(make_lens(m));
    double core = arcs_of(make_reuleaux(m));
    CHECK(lens > prev_lens);
    CHECK(core > prev_reuleaux);
    prev_lens = lens;
    prev_reuleaux = core;
  }
  // Double bubble and peanut: bounded interface length grows in each area.
  double prev = 0;
  for (double m : {0.5, 1.0, 1.5}) {
    double len = arcs_of(make_double_bubble(m, 1.0));
    CHECK(len > prev);
    prev = len;
  }
  prev = 0;
  for (double m : {0.5, 1.0, 1.5}) {
    double len = arcs_of(make_peanut(m, 1.0));
    CHECK(len > prev);
    prev = len;
  }
}

TEST_CASE("construct dispatch validates the area count") {
  ConstructionSpec spec;
  spec.kind = ConstructionSpec::Kind::Lens;
  spec.areas = {1.0, 2.0};
  CHECK_THROWS(construct(spec));
  spec.areas = {1.0};
  CHECK(validate_topology(construct(spec)).valid());
  CHECK(construction_kind_from_name("peanut") == ConstructionSpec::Kind::Peanut);
  CHECK_THROWS(construction_kind_from_name("megabubble"));
}
