import pytest

from treeamp import hecke, tree
from treeamp.orbits import (
    OrbitKind,
    OrbitModel,
    ProductPoint,
    brute_force_intersect,
    count_global_intersections,
    one_sided_support,
    orbit_intersect_one_sided,
)

SL2 = OrbitModel(OrbitKind.SL2)
TORUS = OrbitModel(OrbitKind.MULTIPLICATIVE)


class TestOneSidedSupport:
    def test_right_coordinate_is_root(self):
        pts = one_sided_support(2, 1)
        assert len(pts) == 6
        assert all(pt.right.is_root() for pt in pts)
        assert all(pt.left.depth() == 2 for pt in pts)

    def test_size(self):
        assert len(one_sided_support(3, 2)) == 108

    def test_j_zero_rejected(self):
        with pytest.raises(ValueError):
            one_sided_support(2, 0)

    def test_mismatched_primes_rejected(self):
        with pytest.raises(ValueError):
            ProductPoint(tree.root(2), tree.root(3))


class TestClosedForm:
    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_sl2_never_meets(self, p, j):
        assert orbit_intersect_one_sided(SL2, p, j) == 0

    def test_torus_spot(self):
        assert orbit_intersect_one_sided(TORUS, 3, 2) == 2

    def test_linearity_in_translates(self):
        model = OrbitModel(OrbitKind.MULTIPLICATIVE, 3)
        assert orbit_intersect_one_sided(model, 2, 1) == 6


class TestBruteForce:
    @pytest.mark.parametrize("kind", [OrbitKind.SL2, OrbitKind.MULTIPLICATIVE])
    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("j", [1, 2, 3])
    @pytest.mark.parametrize("index", [1, 2, 3])
    def test_matches_closed_form(self, kind, p, j, index):
        model = OrbitModel(kind, index)
        closed = orbit_intersect_one_sided(model, p, j)
        assert brute_force_intersect(model, p, j, ball_radius=2 * j) == closed

    def test_identity_coset_on_apartment(self):
        assert brute_force_intersect(TORUS, 2, 0, ball_radius=0) == 1

    def test_small_ball_rejected(self):
        with pytest.raises(ValueError):
            brute_force_intersect(TORUS, 2, 2, ball_radius=3)


class TestGlobalCounts:
    def two_prime_tau(self):
        parts = {2: (hecke.basic(2, 1), 1), 3: (hecke.basic(3, 1), 1)}
        return hecke.subtract_identity(hecke.global_assemble(parts))

    def test_sl2_always_zero(self):
        assert count_global_intersections(SL2, self.two_prime_tau()) == 0

    def test_empty_element(self):
        assert count_global_intersections(TORUS, hecke.GlobalHeckeElement.from_dict({})) == 0

    def test_two_prime_expansion(self):
        # per prime the square contributes radii 2 and 4 (2 hits each);
        # the single cross point contributes 2 * 2
        assert count_global_intersections(TORUS, self.two_prime_tau()) == 4 + 4 + 4

    def test_monotone_in_index(self):
        tau = self.two_prime_tau()
        counts = [count_global_intersections(OrbitModel(OrbitKind.MULTIPLICATIVE, c), tau)
                  for c in (1, 2, 3)]
        assert counts == [12, 24, 36]

    def test_additive_over_support(self):
        tau = self.two_prime_tau()
        total = 0
        for point, coeff in tau.coeffs:
            single = hecke.GlobalHeckeElement.from_dict({point: coeff})
            total += count_global_intersections(TORUS, single)
        assert total == count_global_intersections(TORUS, tau)
