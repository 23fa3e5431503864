import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import signed_inverse, symmetric_inverse
from refmonoids.errors import UsageError
from refmonoids.pperm import (
    FiniteInverseMonoid,
    FiniteSemilattice,
    PartialMap,
    SignedPartialMap,
    all_partial_maps,
    all_signed_partial_maps,
    compose,
    compose_signed,
    factorizable_check,
    green_classes,
    ideal_isomorphisms,
    inverse,
    inverse_signed,
    is_fundamental,
    monoid_closure,
    mu_congruence,
    mu_witness,
    munn_representation,
    munn_semigroup,
)


@st.composite
def partial_maps(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    k = draw(st.integers(min_value=0, max_value=n))
    dom = draw(st.permutations(range(1, n + 1)))[:k]
    img = draw(st.permutations(range(1, n + 1)))[:k]
    return PartialMap.make(n, zip(sorted(dom), img))


@st.composite
def partial_map_pairs(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))

    def one():
        k = draw(st.integers(min_value=0, max_value=n))
        dom = draw(st.permutations(range(1, n + 1)))[:k]
        img = draw(st.permutations(range(1, n + 1)))[:k]
        return PartialMap.make(n, zip(sorted(dom), img))

    return one(), one()


class TestPartialMap:
    def test_partial_identities_compose_to_intersection(self):
        a = PartialMap.partial_identity(3, {1, 2})
        b = PartialMap.partial_identity(3, {2, 3})
        assert compose(a, b) == PartialMap.partial_identity(3, {2})

    def test_map_times_inverse_is_domain_identity(self):
        a = PartialMap.make(2, [(1, 2)])
        b = PartialMap.make(2, [(2, 1)])
        assert compose(a, b) == PartialMap.partial_identity(2, {1})

    def test_cycle_truncated_by_partial_identity(self):
        cycle = PartialMap.from_permutation([2, 3, 1])
        eps = PartialMap.partial_identity(3, {1})
        assert compose(cycle, eps) == PartialMap.make(3, [(3, 1)])

    def test_size_mismatch(self):
        with pytest.raises(UsageError):
            compose(PartialMap.identity(2), PartialMap.identity(3))

    def test_not_injective_rejected(self):
        with pytest.raises(UsageError):
            PartialMap.make(3, [(1, 2), (3, 2)])

    def test_inverse_of_partial_identity(self):
        e = PartialMap.partial_identity(4, {2, 4})
        assert inverse(e) == e

    def test_inverse_transposes_graph(self):
        a = PartialMap.make(2, [(1, 2)])
        assert inverse(a) == PartialMap.make(2, [(2, 1)])

    @settings(max_examples=100, deadline=None)
    @given(partial_map_pairs())
    def test_inverse_antihomomorphism(self, pair):
        a, b = pair
        assert inverse(compose(a, b)) == compose(inverse(b), inverse(a))
        assert inverse(inverse(a)) == a
        aa = compose(a, inverse(a))
        assert aa == PartialMap.partial_identity(a.n, a.domain)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 5), st.sets(st.integers(1, 5)), st.sets(st.integers(1, 5)))
    def test_partial_identity_meet(self, n, y, z):
        y, z = {i for i in y if i <= n}, {i for i in z if i <= n}
        ey, ez = (
            PartialMap.partial_identity(n, y),
            PartialMap.partial_identity(n, z),
        )
        assert compose(ey, ez) == PartialMap.partial_identity(n, y & z)
        assert compose(ey, ez) == compose(ez, ey)

    def test_counts(self):
        assert len(all_partial_maps(2)) == 7
        assert len(all_partial_maps(3)) == 34
        assert len(all_partial_maps(4)) == 209


class TestSignedPartialMap:
    def test_symmetry_enforced(self):
        a = SignedPartialMap.make(2, [(1, -2)])
        assert (-1, 2) in a.pairs

    def test_domain_symmetric(self):
        a = SignedPartialMap.make(2, [(1, -2)])
        assert a.domain == {1, -1}

    def test_not_injective_rejected(self):
        with pytest.raises(UsageError):
            SignedPartialMap.make(2, [(1, 2), (-1, 2)])

    def test_counts(self):
        assert len(all_signed_partial_maps(1)) == 3
        assert len(all_signed_partial_maps(2)) == 17
        assert len(all_signed_partial_maps(3)) == 139

    def test_inverse(self):
        a = SignedPartialMap.make(2, [(1, -2)])
        assert compose_signed(a, inverse_signed(a)) == SignedPartialMap.partial_identity(
            2, {1}
        )


class TestGreenClasses:
    def test_symmetric_inverse_2(self):
        m = symmetric_inverse(2)
        assert m.size == 7
        g = green_classes(m)
        assert len(g.r) == 4
        domains = {frozenset(m.elements[min(c)].domain) for c in g.r}
        assert domains == {
            frozenset(),
            frozenset({1}),
            frozenset({2}),
            frozenset({1, 2}),
        }

    def test_group_is_single_class(self):
        table = [[(i + j) % 5 for j in range(5)] for i in range(5)]
        m = FiniteInverseMonoid.from_table(table)
        g = green_classes(m)
        assert (
            len(g.r) == len(g.l) == len(g.h) == len(g.d) == len(g.j) == 1
        )

    def test_d_equals_j_on_symmetric_inverse_3(self):
        g = green_classes(symmetric_inverse(3))
        assert g.d == g.j
        assert len(g.d) == 4  # one class per rank 0..3


class TestMu:
    def test_symmetric_inverse_monoids_fundamental(self):
        for n in (1, 2, 3):
            assert is_fundamental(symmetric_inverse(n))

    def test_signed_identity_related_to_sign_flip(self):
        m = signed_inverse(1)
        idx = {e: i for i, e in enumerate(m.elements)}
        one = idx[SignedPartialMap.identity(1)]
        flip = idx[SignedPartialMap.make(1, [(1, -1)])]
        classes = mu_congruence(m)
        assert any(one in c and flip in c for c in classes)

    def test_two_element_semilattice_fundamental(self):
        chain = FiniteSemilattice.chain(2)
        m = FiniteInverseMonoid.from_table(chain.meet_table)
        assert is_fundamental(m)

    def test_witness_on_signed(self):
        m = signed_inverse(2)
        assert not is_fundamental(m)
        assert mu_witness(m) is not None


class TestMunn:
    def test_chain_has_one_iso_per_level(self):
        e = FiniteSemilattice.chain(3)
        t = munn_semigroup(e)
        assert t.size == 3

    def test_singleton_semilattice(self):
        e = FiniteSemilattice.chain(1)
        assert munn_semigroup(e).size == 1

    def test_boolean_two_atoms(self):
        e = FiniteSemilattice.boolean(2)
        t = munn_semigroup(e)
        # exhaustive ideal-isomorphism search: 2 automorphisms of the square,
        # 4 isomorphisms among the two atom ideals, 1 on the bottom
        assert t.size == 7
        # idempotents of the Munn semigroup reproduce the input semilattice
        idems = t.idempotents
        pos = {e_idx: k for k, e_idx in enumerate(idems)}
        for i in idems:
            for j in idems:
                met = t.mul(i, j)
                di = t.elements[i].domain & t.elements[j].domain
                assert t.elements[met].domain == di

    def test_ideal_isos_between_unequal_chains_empty(self):
        e = FiniteSemilattice.chain(3)
        assert ideal_isomorphisms(e, 0, 2) == []

    def test_munn_output_validates(self):
        e = FiniteSemilattice.boolean(2)
        munn_semigroup(e).validate()


class TestMunnRepresentation:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_delta_is_homomorphism_with_kernel_mu(self, n):
        m = symmetric_inverse(n)
        delta = munn_representation(m)
        for a in range(m.size):
            for b in range(m.size):
                assert compose(delta[a], delta[b]) == delta[m.mul(a, b)]
        by_image: dict = {}
        for a, d in enumerate(delta):
            by_image.setdefault(d, set()).add(a)
        assert set(map(frozenset, by_image.values())) == set(mu_congruence(m))

    def test_kernel_mu_on_signed(self):
        m = signed_inverse(2)
        delta = munn_representation(m)
        by_image: dict = {}
        for a, d in enumerate(delta):
            by_image.setdefault(d, set()).add(a)
        assert set(map(frozenset, by_image.values())) == set(mu_congruence(m))


class TestFactorizable:
    def test_symmetric_inverse_3(self):
        ok, witness = factorizable_check(all_partial_maps(3))
        assert ok
        for a, (eps, g) in witness.items():
            assert compose(eps, g) == a
            assert g.is_unit()

    def test_units_alone(self):
        from itertools import permutations

        units = [
            PartialMap.from_permutation(p) for p in permutations(range(1, 4))
        ]
        ok, _ = factorizable_check(units)
        assert ok

    def test_signed_2(self):
        ok, _ = factorizable_check(all_signed_partial_maps(2))
        assert ok

    def test_non_factorizable_set_detected(self):
        # a single non-identity partial map with no unit above it
        elems = [
            PartialMap.empty(2),
            PartialMap.make(2, [(1, 1)]),
        ]
        # {eps_1, 0} has units only if the full identity is present
        ok, _ = factorizable_check(elems)
        assert not ok


class TestClosure:
    def test_monoid_closure_of_transpositions(self):
        gens = [
            PartialMap.from_permutation([2, 1, 3]),
            PartialMap.from_permutation([1, 3, 2]),
            PartialMap.make(3, [(1, 1), (2, 2)]),
        ]
        closed = monoid_closure(gens)
        # transpositions generate the full group, and any rank-2 partial
        # identity drags in every partial permutation
        assert len(closed) == 34


class TestValidation:
    def test_from_elements_requires_closure(self):
        with pytest.raises(UsageError):
            FiniteInverseMonoid.from_elements(
                [PartialMap.identity(2), PartialMap.make(2, [(1, 2)])], compose
            )

    def test_table_without_identity_rejected(self):
        with pytest.raises(UsageError):
            FiniteInverseMonoid.from_table([[0, 0], [0, 0]])

    def test_small_monoid_validates(self):
        symmetric_inverse(2).validate()
