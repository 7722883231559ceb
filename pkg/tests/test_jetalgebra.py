from __future__ import annotations

import json
from fractions import Fraction

import pytest

from jetlab.exactlin import RatMatrix, rank
from jetlab.heisenberg import hn_algebra, swap_matrix
from jetlab.jetalgebra import (
    E_LABELS,
    HD2_LABELS,
    HDElement,
    anti_semidirect,
    antimorphism_failures,
    bilinear_from_coords,
    center_action_candidates,
    constrained_first_layer,
    constraint_row,
    contract,
    emit_table,
    exp_contraction,
    f_basis,
    hd2_coords,
    hd2_forms,
    hd_basis,
    in_hd2,
    induced_automorphism,
    j2_h2,
    jl_subalgebra,
    psi,
    swap_iso,
)
from jetlab.liealg import generated_subalgebra, make_algebra, verify_morphism
from jetlab.reference_tables import E_TABLE, F_TABLE, parse_cell

E = {lab: k for k, lab in enumerate(E_LABELS)}


def hd2(label, k1=(0, 0, 0, 0), k0=0):
    k2 = [0] * 11
    k2[HD2_LABELS.index(label)] = 1
    return HDElement(k0, tuple(k1), tuple(k2))


def test_hd_basis_layout():
    basis = hd_basis()
    assert len(basis) == 21
    assert [sum(1 for b in basis if b["layer"] == k) for k in (1, 2, 3)] == [15, 5, 1]
    assert [b["label"] for b in basis[:5]] == ["e1", "e2", "e3", "e4", "A_X1^2"]
    assert basis[15]["label"] == "e5" and basis[20]["label"] == "1"


def test_basis_forms():
    b = hd2("X1^2").bilinear
    assert b[0][0] == 1 and sum(abs(v) for row in b for v in row) == 1
    b = hd2("X1Y1").bilinear
    assert b[0][2] == 1 and b[3][1] == -1
    assert sum(abs(v) for row in b for v in row) == 2


def test_hd2_dimension_and_relations():
    flat = RatMatrix.from_columns([[v for row in f for v in row] for f in hd2_forms()], 16)
    assert rank(flat) == 11
    # five independent relations cut HD^2 out of the 16-dim space of bilinear forms
    from jetlab.exactlin import nullspace

    assert nullspace(flat.T).cols == 5
    assert not in_hd2([[0, 0, 1, 0], [0] * 4, [0] * 4, [0] * 4])  # dx1 (x) dy1 alone
    for k in range(11):
        coords = [0] * 11
        coords[k] = Fraction(k + 1, 3)
        assert hd2_coords(bilinear_from_coords(coords)) == coords


def test_contract_examples():
    assert contract([1, 0, 0, 0], hd2("X1^2")) == HDElement(0, (1, 0, 0, 0), (0,) * 11)
    assert contract([0, 0, 1, 0], hd2("X1Y1")) == HDElement(0, (1, 0, 0, 0), (0,) * 11)
    assert contract([1, 2, 3, 4], HDElement(5, (0,) * 4, (0,) * 11)) == HDElement.zero()
    a = HDElement(1, (2, 0, 0, 3), (0,) * 11)
    assert contract([1, 1, 1, 1], a).k0 == 5


def test_psi_examples():
    p = psi()
    center = p.center
    x1y1 = HDElement.from_vector(center.apply(hd2("X1Y1").vector()))
    assert x1y1 == HDElement(Fraction(1, 4), (0,) * 4, (0,) * 11)
    y1x1 = HDElement.from_vector(center.apply(hd2("Y1X1").vector()))
    assert y1x1 == HDElement(Fraction(-1, 4), (0,) * 4, (0,) * 11)
    assert not any(center.apply(hd2("X1X2").vector()))


def test_psi_center_readings():
    cands = center_action_candidates()
    derived = [HDElement.from_vector(psi().center.apply(hd2(lab).vector())).k0 for lab in HD2_LABELS]
    assert cands["derived"] == derived
    assert cands["literal"] != derived


def test_antimorphism_identity():
    mats = psi().matrices()
    assert antimorphism_failures(hn_algebra(2), mats) == []
    # the matrix identity [V,W] contraction = -[V contr, W contr] for all generator pairs
    for i in range(4):
        for j in range(4):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            expected = psi().action(hn_algebra(2).ad(hn_algebra(2).basis_vector(i)).col(j))
            assert expected == -comm


def test_anti_semidirect_trivial_cases():
    g = hn_algebra(2)
    same, origin = anti_semidirect(g, [], [RatMatrix.zeros(0, 0)] * 5)
    assert same is g and len(origin) == 5
    ab = make_algebra(2, {}, [[0, 1]])
    zero = [RatMatrix.zeros(3, 3)] * 2
    alg, _ = anti_semidirect(ab, [[0, 1, 2]], zero)
    assert alg.dim == 5 and not alg.brackets
    with pytest.raises(ValueError):
        anti_semidirect(g, [[0]], [RatMatrix.identity(1)] * 5)


def test_j2_examples():
    g = j2_h2()
    assert g.dim == 21 and g.layer_dims == [15, 5, 1]
    assert g.sc(0, 2) == {15: -4}
    assert g.sc(1, 6) == {19: 1} and g.sc(6, 1) == {19: -1}
    assert g.sc(15, 6) == {20: Fraction(-1, 4)}


def test_e_table_matches_reference():
    g = j2_h2()
    pairs = 0
    for i in range(20):
        for j in range(20):
            assert g.sc(i, j) == parse_cell(E_TABLE[i][j]), (i + 1, j + 1)
            pairs += i < j
        assert g.sc(i, 20) == {}
    assert pairs == 190


@pytest.mark.parametrize("c", [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 5)])
def test_f_table_matches_reference(c):
    g, emb = jl_subalgebra(c)
    assert g.dim == 20 and g.layer_dims == [14, 5, 1]
    for i in range(19):
        for j in range(19):
            assert g.sc(i, j) == parse_cell(F_TABLE[i][j], c), (i + 1, j + 1)
    assert emb == f_basis(c)


def test_jl_examples():
    c = Fraction(7, 3)
    g, _ = jl_subalgebra(c)
    assert g.sc(0, 7) == {15: c}
    assert g.sc(0, 2) == {14: -4}
    assert g.sc(13, 14) == {19: Fraction(-1, 4)}
    with pytest.raises(ValueError):
        jl_subalgebra(0)


def test_jl_is_generated_by_constrained_layer():
    c = Fraction(2)
    row = constraint_row(c)
    assert all(row[k] == 0 for k in range(21) if not 4 <= k < 15)
    sub, emb = generated_subalgebra(j2_h2(), constrained_first_layer(row[4:15]))
    assert sub.layer_dims == [14, 5, 1]
    both = emb.hstack(f_basis(c))
    assert rank(both) == 20  # same subspace as the F basis


def test_scaled_constraint_same_subalgebra():
    row = constraint_row(Fraction(3, 2))[4:15]
    a = constrained_first_layer(row)
    b = constrained_first_layer([Fraction(-5, 7) * v for v in row])
    assert rank(a.hstack(b)) == 14


def test_emit_table_examples():
    ab = make_algebra(3, {}, [[0, 1, 2]])
    body = emit_table(ab).splitlines()[2:]
    assert all(line.split("|")[1].split() == ["0"] * 3 for line in body)
    rows = emit_table(j2_h2(), omit_trivial=True).splitlines()
    assert len(rows) == 22 and "-4 E16" in rows[2] and "E21" not in rows[0]
    doc = emit_table(jl_subalgebra(2)[0], fmt="json", prefix="F", omit_trivial=True)
    assert "2 F16" in doc["table"][0]
    assert json.loads(json.dumps(doc))["dim"] == 20
    with pytest.raises(ValueError):
        emit_table(ab, fmt="xml")


@pytest.mark.parametrize("c", [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(5, 7)])
def test_swap_iso(c):
    src, _ = jl_subalgebra(c)
    dst, _ = jl_subalgebra(1 / c)
    iso = swap_iso(c)
    assert verify_morphism(src, dst, iso)
    back = swap_iso(1 / c)
    assert verify_morphism(src, src, back @ iso)
    assert back @ iso == RatMatrix.identity(20)  # the swap is an involution


def test_swap_transport_is_automorphism():
    t = induced_automorphism(swap_matrix(), 1)
    assert verify_morphism(j2_h2(), j2_h2(), t)
    # A_X1Y1 = dx1(x)dy1 - dy2(x)dx2 goes to dx2(x)dy2 - dy1(x)dx1
    img = t.apply([int(k == E["A_X1Y1"]) for k in range(21)])
    b = HDElement(0, (0,) * 4, tuple(img[4:15])).bilinear
    assert b[1][3] == 1 and b[2][0] == -1 and sum(abs(v) for row in b for v in row) == 2


def test_exp_contraction():
    w = [1, 2, 0, -1]
    e = exp_contraction(w)
    n = e - RatMatrix.identity(16)
    assert (n @ n @ n).is_zero()
    assert exp_contraction([0, 0, 0, 0]) == RatMatrix.identity(16)
