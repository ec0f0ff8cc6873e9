#include <doctest.h>

#include <string>

#include "quatkit/io.hpp"
#include "quatkit/sampling.hpp"
#include "support.hpp"

using namespace quatkit;
using testing::dist;
using testing::error_kind;
namespace io = quatkit::io;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("json round trips") {
  Rng rng(51);
  const Quaternion q = random_quaternion(rng);
  CHECK(io::to_json(Quaternion{1, 2, 3, 4}) == io::json::parse("[1.0, 2.0, 3.0, 4.0]"));
  // Doubles survive a text round trip exactly.
  CHECK(dist(io::quaternion_from_json(io::json::parse(io::to_json(q).dump())), q) == 0.0);

  const Frame f = random_frame(rng);
  CHECK(io::frame_from_json(io::to_json(f)) == f);
  const QVector v = random_qvector(rng, 3);
  CHECK(norm(io::qvector_from_json(io::to_json(v)) - v) == 0.0);
  const QMatrix t = random_qmatrix(rng, 3);
  CHECK(distance(io::qmatrix_from_json(io::json::parse(io::to_json(t).dump())), t) == 0.0);
  const ComplexMatrix c = random_complex_matrix(rng, 4);
  CHECK((io::cmatrix_from_json(io::to_json(c)) - c).norm() == 0.0);

  const QMatrix J = random_anti_unit(rng, 3);
  const SplitSpace s = split_plus_minus(J, f);
  const SplitSpace s2 = io::split_space_from_json(io::to_json(s));
  CHECK(distance(s2.J, s.J) == 0.0);
  CHECK(dist(s2.i().quaternion(), s.i().quaternion()) < 1e-15);
  REQUIRE(s2.dimension() == 3);
  for (std::size_t m = 0; m < 3; ++m) CHECK(norm(s2.plus_basis[m] - s.plus_basis[m]) == 0.0);

  const StarAlgebra a(3, planted_complex_induced(rng, 3, f).generators);
  const StarAlgebra a2 = io::star_algebra_from_json(io::to_json(a));
  CHECK(a2.n() == 3);
  REQUIRE(a2.generators().size() == a.generators().size());
  for (std::size_t g = 0; g < a.generators().size(); ++g)
    CHECK(distance(a2.generators()[g], a.generators()[g]) == 0.0);

  const Classification cls = classify_irreducible(a);
  const io::json cj = io::to_json(cls);
  CHECK(cj["kind"] == "ComplexInduced");
  CHECK(cj["commutant_dim"] == 2);
  const Classification back = io::classification_from_json(cj);
  CHECK(back.kind == AlgebraKind::ComplexInduced);
  REQUIRE(back.J.has_value());
  CHECK(distance(*back.J, *cls.J) == 0.0);
  CHECK(algebra_kind_from_string("RealInduced") == AlgebraKind::RealInduced);
  CHECK_FALSE(algebra_kind_from_string("nope").has_value());

  const io::json trace = io::evolution_trace({0.0, 1.0}, {v, v});
  CHECK(trace["t"].size() == 2);
  CHECK(trace["states"].size() == 2);
  CHECK(trace["norms"][1].get<double>() == doctest::Approx(norm(v)).epsilon(1e-15));
}

TEST_CASE("malformed documents") {
  using io::json;
  CHECK(error_kind([] { io::quaternion_from_json(json::parse("[1, 2, 3]")); }) == ErrorKind::Format);
  CHECK(error_kind([] { io::quaternion_from_json(json::parse("[1, 2, \"x\", 4]")); }) == ErrorKind::Format);
  CHECK(error_kind([] { io::unit_from_json(json::parse("[0, 0, 0]")); }) == ErrorKind::Format);
  CHECK(error_kind([] { io::qmatrix_from_json(json::parse(R"({"n": 2, "entries": [[[1,0,0,0]]]})")); }) ==
        ErrorKind::Format);
  CHECK(error_kind([] { io::star_algebra_from_json(json::parse(R"({"generators": []})")); }) ==
        ErrorKind::Format);
  CHECK(error_kind([] { io::read_json_file(fixture("malformed.json")); }) == ErrorKind::Format);
  CHECK(error_kind([] { io::system_from_json(io::read_json_file(fixture("wrong_shape.json"))); }) ==
        ErrorKind::Format);
  CHECK(error_kind([] { io::read_json_file(fixture("does_not_exist.json")); }) == ErrorKind::Format);
}

TEST_CASE("fixture systems") {
  const auto full = io::system_from_json(io::read_json_file(fixture("full_algebra.json")));
  CHECK(classify_irreducible(full.algebra).kind == AlgebraKind::ProperQuaternionic);
  const auto real = io::system_from_json(io::read_json_file(fixture("real_induced.json")));
  CHECK(classify_irreducible(real.algebra).kind == AlgebraKind::RealInduced);
  const auto block = io::system_from_json(io::read_json_file(fixture("block_diagonal.json")));
  CHECK_FALSE(is_irreducible(block.algebra));
  CHECK(commutant(block.algebra).dim() == 3);

  for (const char* name : {"complex_induced_n2.json", "complex_induced_n4.json"}) {
    const io::json doc = io::read_json_file(fixture(name));
    const auto system = io::system_from_json(doc);
    CHECK(system.evolution.size() == 2);
    const Classification c = classify_irreducible(system.algebra);
    REQUIRE(c.kind == AlgebraKind::ComplexInduced);
    const QMatrix planted = io::qmatrix_from_json(doc.at("planted_J"));
    CHECK(std::min(distance(*c.J, planted), distance(*c.J, -planted)) < 1e-8);
    CHECK(reduce_system(system.algebra, system.evolution, ImaginaryUnit::e1()).all_pass());
  }
}
