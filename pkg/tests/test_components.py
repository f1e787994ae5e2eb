import itertools

import pytest

from cy_smoother.components import (
    BaseThreefold,
    ComponentError,
    FullLatticeModeError,
    P3,
    build_component,
    c2_pair,
    euler_number,
    pair_h2_h4,
    triple_product,
)
from cy_smoother.exact_lattice import IntMatrix
from cy_smoother.surface import K3Model

from conftest import MU_TABLE, NU_TABLE


class TestBase:
    def test_p3(self):
        assert P3.H_cubed == 1
        assert P3.euler == 4

    def test_index_cube_divides(self):
        with pytest.raises(ComponentError):
            BaseThreefold("bad", 1, 3, 55, 0)

    def test_quadric(self):
        q = BaseThreefold("Q", 1, 3, 54, 0)
        assert q.H_cubed == 2


class TestBuildComponent:
    def test_quick_example_c2(self, quartic):
        y = build_component(P3, quartic, [(8,)])
        assert c2_pair(y, (1, 0)) == 38  # pi* H . c2

    def test_single_center_cube(self, quartic):
        y = build_component(P3, quartic, [(5,)])
        assert triple_product(y, (5, -1), (5, -1), (5, -1)) == 5
        assert c2_pair(y, (5, -1)) == 50

    def test_reorder_changes_last_cube(self, quartic):
        y_mu = build_component(P3, quartic, [(5,), (2,), (1,)])
        y_nu = build_component(P3, quartic, [(5,), (1,), (2,)])
        two_minus_e2 = (2, 0, -1, 0)
        two_minus_e3 = (2, 0, 0, -1)
        assert triple_product(y_mu, two_minus_e2, two_minus_e2, two_minus_e2) == -32
        assert triple_product(y_nu, two_minus_e3, two_minus_e3, two_minus_e3) == -40

    def test_bare_p3_c2(self, quartic):
        y = build_component(P3, quartic, [])
        assert c2_pair(y, (1,)) == 6

    def test_euler(self, quartic):
        assert euler_number(build_component(P3, quartic, [])) == 4
        assert euler_number(build_component(P3, quartic, [(8,)])) == -252
        # an elliptic center contributes nothing: need c^2 = 0 on the lattice
        D = K3Model(IntMatrix.from_rows([[4, 1], [1, 0]]), ("h", "f"), (1, 0))
        y = build_component(P3, D, [(0, 1)])  # f^2 = 0, genus 1
        assert euler_number(y) == P3.euler

    def test_restriction_of_D_class(self, quartic):
        y = build_component(P3, quartic, [(5,), (2,)])
        restricted = y.restriction.mul_vector(y.D_class)
        # r*h minus the sum of the center classes
        assert restricted == (4 * 1 - 5 - 2,)

    def test_omega_triviality(self, quartic):
        for centers in ([], [(8,)], [(5,), (2,), (1,)]):
            y = build_component(P3, quartic, centers)
            assert y.canonical_class == tuple(-x for x in y.D_class)

    def test_projection_formula_on_pullbacks(self, quartic, rng):
        y = build_component(P3, quartic, [(5,), (2,)])
        for _ in range(20):
            a, b, c = (rng.randint(-4, 4) for _ in range(3))
            av = (a, 0, 0)
            bv = (b, 0, 0)
            cv = (c, 0, 0)
            assert triple_product(y, av, bv, cv) == a * b * c * P3.H_cubed

    def test_minus_k_dot_c2_is_24(self, quartic):
        for centers in ([], [(8,)], [(5,), (2,), (1,)], [(3,), (5,)]):
            y = build_component(P3, quartic, centers)
            assert c2_pair(y, tuple(-x for x in y.canonical_class)) == 24

    def test_full_tensor_symmetry(self, quartic, rng):
        y = build_component(P3, quartic, [(5,), (2,), (1,)])
        n = y.h2_rank
        for i, j, k in itertools.product(range(n), repeat=3):
            base = y.triple[i][j][k]
            for p in itertools.permutations((i, j, k)):
                assert y.triple[p[0]][p[1]][p[2]] == base

    def test_h4_pairing_shape(self, quartic):
        y = build_component(P3, quartic, [(5,), (2,)])
        assert pair_h2_h4(y, (1, 0, 0), (1, 0, 0)) == 1  # H . g
        assert pair_h2_h4(y, (0, 1, 0), (0, 1, 0)) == -1  # e1 . M1
        assert pair_h2_h4(y, (0, 1, 0), (0, 0, 1)) == 0
        assert y.d_degree_h4 == (4, 1, 1)


class TestComponentErrors:
    def test_rejects_higher_rank_base(self, quartic):
        fat = BaseThreefold("MM-12.3-1", 2, 1, 4, 22)
        with pytest.raises(FullLatticeModeError):
            build_component(fat, quartic, [])

    def test_rejects_wrong_center_dimension(self, quartic):
        with pytest.raises(ComponentError):
            build_component(P3, quartic, [(1, 2)])

    def test_rejects_negative_mutual_intersection(self):
        D = K3Model(IntMatrix.from_rows([[4, 0], [0, -2]]), ("h", "e"), (1, 0))
        rational = (0, 1)  # square -2, genus 0
        other = (1, 1)     # square 2; meets the first in -2
        with pytest.raises(ComponentError):
            build_component(P3, D, [rational, other])

    def test_dimension_checked_in_products(self, quartic):
        y = build_component(P3, quartic, [(5,)])
        with pytest.raises(ComponentError):
            triple_product(y, (1,), (1, 0), (1, 0))
        with pytest.raises(ComponentError):
            c2_pair(y, (1, 0, 0))


def test_mu_nu_calibration_tables(quartic):
    """The two full 10-entry tables, from the component calculus alone."""
    y1 = build_component(P3, quartic, [])
    y_mu = build_component(P3, quartic, [(5,), (2,), (1,)])
    y_nu = build_component(P3, quartic, [(5,), (1,), (2,)])
    gens1 = {1: (1,), 2: (0,), 3: (0,)}
    mu_gens = {1: (1, 0, 0, 0), 2: (5, -1, 0, 0), 3: (2, 0, -1, 0)}
    nu_gens = {1: (1, 0, 0, 0), 2: (5, -1, 0, 0), 3: (2, 0, 0, -1)}
    for table, y2, gens2 in ((MU_TABLE, y_mu, mu_gens), (NU_TABLE, y_nu, nu_gens)):
        for (i, j, k), expected in table.items():
            got = triple_product(y1, gens1[i], gens1[j], gens1[k]) + triple_product(
                y2, gens2[i], gens2[j], gens2[k]
            )
            assert got == expected, (i, j, k)
