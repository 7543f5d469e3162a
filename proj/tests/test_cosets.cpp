#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>
#include <set>

#include "pgrad/coset_table.hpp"
#include "pgrad/errors.hpp"
#include "pgrad/schreier.hpp"
#include "test_util.hpp"

using namespace pgrad;
using namespace pgrad::test;

namespace {

// Kernel of the mod-2 exponent map a -> bits[0], b -> bits[1], ... as an
// explicit two-point action.
CosetTable parity_kernel(PresentationPtr p, const std::vector<int>& bits) {
  size_t n = 2;
  std::vector<std::vector<uint32_t>> imgs;
  for (int g = 0; g < p->ngens(); ++g) {
    std::vector<uint32_t> img(n);
    for (uint32_t c = 0; c < n; ++c) img[c] = bits[g] ? (c ^ 1u) : c;
    imgs.push_back(img);
  }
  return from_action(p, imgs);
}

}  // namespace

TEST_CASE("enumeration of cyclic and symmetric groups") {
  CHECK(todd_coxeter(pres("gens: a\nrel: a^4\n"), {}, 1000).size() == 4);
  // Oracle: a=(12), b=(123) generate S3, so the regular representation has 6
  // cosets.
  CHECK(todd_coxeter(pres("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2\n"), {}, 1000).size() == 6);
  CHECK(todd_coxeter(pres("gens: a\nrel: a\n"), {}, 100).size() == 1);
  CHECK(todd_coxeter(pres("gens: a b\nrel: a^4\nrel: b^2 a^-2\nrel: b^-1 a b a\n"), {}, 1000)
            .size() == 8);  // quaternions
}

TEST_CASE("enumeration matches known orders") {
  // Dihedral groups of order 2n.
  for (int n = 3; n <= 10; ++n) {
    auto dn = pres("gens: a b\nrel: a^" + std::to_string(n) + "\nrel: b^2\nrel: (a b)^2\n");
    CHECK(todd_coxeter(dn, {}, 1 << 10).size() == uint32_t(2 * n));
  }
  // Icosahedral group: coincidence-heavy enumeration.
  CHECK(todd_coxeter(pres("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^5\n"), {}, 1 << 12).size() ==
        60);
  // Generalized quaternion group of order 16.
  CHECK(todd_coxeter(pres("gens: a b\nrel: a^8\nrel: b^2 a^-4\nrel: b^-1 a b a\n"), {}, 1 << 10)
            .size() == 16);
  // Abelian products.
  CHECK(todd_coxeter(pres("gens: a b\nrel: a^6\nrel: b^4\nrel: [a,b]\n"), {}, 1 << 10).size() ==
        24);
  // Redundant and collapsing relators force heavy coincidence processing.
  CHECK(todd_coxeter(pres("gens: a b\nrel: a^5\nrel: b\nrel: a b a\n"), {}, 1 << 10).size() == 1);
  CHECK(todd_coxeter(pres("gens: a b\nrel: a b\nrel: b^3\nrel: a^2 b\n"), {}, 1 << 10).size() ==
        1);
}

TEST_CASE("random collapsing presentations reach the right order") {
  // Presentations of Z/n and of the trivial group with redundant relators
  // drive the coincidence machinery hard.
  std::mt19937 rng(29);
  for (int t = 0; t < 40; ++t) {
    int n = 1 + int(rng() % 12);
    Presentation p = free_presentation(2);
    p.relators.push_back(multiply(Word::generator(2, 0), invert(Word::generator(2, 1))));
    p.relators.push_back(power(Word::generator(2, 0), n));
    Word junk = random_word(rng, 2, 4);
    p.relators.push_back(multiply(multiply(junk, power(Word::generator(2, 1), n)), invert(junk)));
    CosetTable ct = todd_coxeter(std::make_shared<const Presentation>(p), {}, 1 << 10);
    CHECK(ct.size() == uint32_t(n));
    ct.validate();
  }
  for (int t = 0; t < 40; ++t) {
    Presentation p = free_presentation(2);
    p.relators.push_back(random_word(rng, 2, 5));
    p.relators.push_back(Word::generator(2, 0));
    p.relators.push_back(Word::generator(2, 1));
    CHECK(todd_coxeter(std::make_shared<const Presentation>(p), {}, 1 << 10).size() == 1);
  }
}

TEST_CASE("regular representations validate and multiply consistently") {
  // Order and inverse structure of the regular representation agree with
  // tracing, across a mixed corpus.
  for (const char* src :
       {"gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2\n",
        "gens: a b\nrel: a^4\nrel: b^2 a^-2\nrel: b^-1 a b a\n",
        "gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^3\n"}) {
    auto p = pres(src);
    CosetTable t = todd_coxeter(p, {}, 1 << 10);
    t.validate();
    StandardizedTable st = standardize(t);
    st.table.validate();
    // Every element's rep traces back to its coset from anywhere.
    for (uint32_t c = 0; c < st.table.size(); ++c)
      for (uint32_t d = 0; d < st.table.size(); ++d)
        CHECK(st.table.trace(st.table.rep(c), d) ==
              st.table.trace(multiply(st.table.rep(d), st.table.rep(c)), 0));
  }
}

TEST_CASE("enumeration over nontrivial subgroups") {
  auto f2 = pres("gens: a b\n");
  CosetTable t = todd_coxeter(f2, {w("a^2", *f2), w("b", *f2), w("a b a^-1", *f2)}, 1000);
  CHECK(t.size() == 2);
  t.validate();

  // Index-3 point stabilizer in the S3 action.
  auto s3 = pres("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2\n");
  CosetTable st = todd_coxeter(s3, {w("a", *s3)}, 1000);
  CHECK(st.size() == 3);
}

TEST_CASE("free groups do not close") {
  CHECK_THROWS_AS(todd_coxeter(pres("gens: a b\n"), {}, 1000), ResourceError);
}

TEST_CASE("trace") {
  auto f2 = pres("gens: a b\n");
  CosetTable t = parity_kernel(f2, {1, 0});
  CHECK(t.trace(Word::identity(2), 0) == 0);
  CHECK(t.trace(w("a", *f2), 0) == 1);
  CHECK(t.trace(w("a^2", *f2), 0) == 0);
  CHECK(t.trace(power(w("a", *f2), (int64_t(1) << 40) + 1), 0) == 1);

  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    Word u = random_word(rng, 2, 6);
    uint32_t c = rng() % t.size();
    CHECK(t.trace(multiply(u, invert(u)), c) == c);
    CHECK(t.trace(invert(u), t.trace(u, c)) == c);
  }
}

TEST_CASE("validate catches the full invariant suite") {
  auto z4 = pres("gens: a\nrel: a^4\n");
  CosetTable t = todd_coxeter(z4, {}, 100);
  t.validate();
  standardize(t).table.validate();
}

TEST_CASE("standardize is idempotent and key-stable") {
  auto s3 = pres("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2\n");
  CosetTable t = todd_coxeter(s3, {}, 1000);
  StandardizedTable s1 = standardize(t);
  StandardizedTable s2 = standardize(s1.table);
  CHECK(s1.key == s2.key);
  CHECK(s1.table.dump() == s2.table.dump());
}

TEST_CASE("equal subgroups get equal keys, distinct subgroups distinct keys") {
  auto f2 = pres("gens: a b\n");

  // The same kernel built from the explicit action and from enumeration.
  CosetTable k1 = parity_kernel(f2, {1, 0});
  CosetTable k2 = todd_coxeter(f2, {w("a^2", *f2), w("b", *f2), w("a b a^-1", *f2)}, 100);
  CHECK(standardize(k1).key == standardize(k2).key);

  // Membership oracle agrees on random words.
  std::mt19937 rng(21);
  for (int i = 0; i < 100; ++i) {
    Word u = random_word(rng, 2, 8);
    CHECK((k1.trace(u, 0) == 0) == (k2.trace(u, 0) == 0));
  }

  // The three index-2 subgroups of F2 are pairwise distinct.
  std::set<std::string> keys;
  keys.insert(standardize(parity_kernel(f2, {1, 0})).key);
  keys.insert(standardize(parity_kernel(f2, {0, 1})).key);
  keys.insert(standardize(parity_kernel(f2, {1, 1})).key);
  CHECK(keys.size() == 3);
}

TEST_CASE("is_normal") {
  auto f2 = pres("gens: a b\n");
  CHECK(is_normal(parity_kernel(f2, {1, 0})));
  CHECK(is_normal(parity_kernel(f2, {1, 1})));

  // Point stabilizer of the S3 action on 3 points: a=(12), b=(123).
  CosetTable stab = from_action(f2, {{1, 0, 2}, {1, 2, 0}});
  CHECK(stab.size() == 3);
  CHECK_FALSE(is_normal(stab));

  auto s3 = pres("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2\n");
  CHECK(is_normal(todd_coxeter(s3, {w("b", *s3)}, 100)));  // A3, index 2
}

TEST_CASE("orbit transversal") {
  auto f2 = pres("gens: a b\n");
  // Kernel of F2 -> Z/2 x Z/2.
  std::vector<std::vector<uint32_t>> imgs = {{1, 0, 3, 2}, {2, 3, 0, 1}};
  CosetTable t = from_action(f2, imgs);
  CHECK(t.size() == 4);
  REQUIRE(is_normal(t));

  OrbitTransversal ot = orbit_transversal(t, w("a", *f2));
  CHECK(ot.order == 2);
  CHECK(ot.transversal.size() == 2);
  CHECK(ot.transversal.size() * ot.order == t.size());

  // x in H: every coset is its own orbit.
  OrbitTransversal in_h = orbit_transversal(t, w("a^2", *f2));
  CHECK(in_h.order == 1);
  CHECK(in_h.transversal.size() == 4);

  auto z4 = pres("gens: a\nrel: a^4\n");
  CosetTable h = todd_coxeter(z4, {w("a^2", *z4)}, 100);
  OrbitTransversal oz = orbit_transversal(h, w("a", *z4));
  CHECK(oz.order == 2);
  CHECK(oz.transversal.size() == 1);

  // Non-normal tables are rejected: a = (12) has orbits of sizes 2 and 1.
  CosetTable stab = from_action(f2, {{1, 0, 2}, {1, 2, 0}});
  CHECK_THROWS_AS(orbit_transversal(stab, w("a", *f2)), UsageError);
}

TEST_CASE("descend walks the cyclic tower") {
  auto z4 = pres("gens: a\nrel: a^4\n");
  auto root = std::make_shared<const CosetTable>(standardize(whole_group_table(z4)).table);

  SchreierData sd = make_schreier(root);
  ModPAbelianization md = mod_p_data(sd, 2);
  REQUIRE(md.dim == 1);
  CosetTable h = descend(*root, 2, [&](uint32_t c, int g) {
    int id = sd.id_at(c, g);
    if (id < 0) return 0u;
    std::vector<uint32_t> row(md.sgen_coords.row(id), md.sgen_coords.row(id) + md.dim);
    return row[0];
  });
  CHECK(h.size() == 2);
  h.validate();
  CHECK(is_normal(h));
  CHECK(standardize(h).key == standardize(todd_coxeter(z4, {w("a^2", *z4)}, 100)).key);

  auto hp = std::make_shared<const CosetTable>(std::move(h));
  SchreierData sd2 = make_schreier(hp);
  ModPAbelianization md2 = mod_p_data(sd2, 2);
  REQUIRE(md2.dim == 1);
  CosetTable triv = descend(*hp, 2, [&](uint32_t c, int g) {
    int id = sd2.id_at(c, g);
    if (id < 0) return 0u;
    return md2.sgen_coords.at(id, 0);
  });
  CHECK(triv.size() == 4);
  triv.validate();
}

TEST_CASE("descend matches enumeration on F2") {
  auto f2 = pres("gens: a b\n");
  auto root = std::make_shared<const CosetTable>(standardize(whole_group_table(f2)).table);
  SchreierData sd = make_schreier(root);
  ModPAbelianization md = mod_p_data(sd, 2);
  REQUIRE(md.dim == 2);
  // lambda = (1, 0) on the basis (a, b): the a-parity kernel.
  CosetTable h = descend(*root, 2, [&](uint32_t c, int g) {
    int id = sd.id_at(c, g);
    if (id < 0) return 0u;
    return md.sgen_coords.at(id, 0);
  });
  CHECK(h.size() == 2);
  CosetTable tc = todd_coxeter(f2, {w("a^2", *f2), w("b", *f2), w("a b a^-1", *f2)}, 100);
  CHECK(standardize(h).key == standardize(tc).key);
}

TEST_CASE("descend aborts on an inconsistent evaluation") {
  // In <a | a^3> the class of a in V would need 3*v = 0 with v != 0 mod 2;
  // forcing v = 1 must break relator closure.
  auto z3 = pres("gens: a\nrel: a^3\n");
  auto root = std::make_shared<const CosetTable>(standardize(whole_group_table(z3)).table);
  CHECK_THROWS_AS(descend(*root, 2, [](uint32_t, int) { return 1u; }), IntegrityError);
}

TEST_CASE("table dump format") {
  auto z2 = pres("gens: a\nrel: a^2\n");
  CosetTable t = todd_coxeter(z2, {}, 10);
  CHECK(standardize(t).table.dump() == "1\t1\n0\t0\n");
}
