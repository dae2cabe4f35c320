import pytest

from artinalg.field import QQ, GF
from artinalg.presentation import parse_presentation, ParseError
from artinalg.algebra import (
    build_algebra, algebra_from_text, fibre_product, socle,
    gorenstein_test, AlgebraBuildError,
)


R1_TEXT = "field Q; vars x,y,z; rels x^3,y^3,z^3,x*y,x*z^2;"


def test_parse_r1():
    p = parse_presentation(R1_TEXT)
    assert p.field == QQ
    assert p.variables == ["x", "y", "z"]
    assert len(p.relations) == 5
    assert p.truncation_degree == 5
    assert p.is_monomial()


def test_parse_hypersurface_over_f101():
    p = parse_presentation("field F 101; vars x; rels x^2;")
    assert p.field == GF(101)
    assert p.variables == ["x"]
    assert p.relations == [{(2,): 1}]


def test_parse_constant_term_rejected():
    with pytest.raises(ParseError, match="constant-term"):
        parse_presentation("vars x; rels 1+x;")


def test_parse_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable"):
        parse_presentation("vars x; rels x*y;")


def test_parse_syntax_error_has_position():
    with pytest.raises(ParseError, match="line 2"):
        parse_presentation("vars x;\nrels ;")


def test_parse_comments_and_signs():
    p = parse_presentation("# a comment\nvars x,y; rels x^2 - 2*x*y, y^2;")
    assert p.relations[0] == {(2, 0): 1, (1, 1): -2}


def test_parse_duplicate_vars_deduplicated():
    p = parse_presentation("vars x,y,x; rels x^2,y^2;")
    assert p.variables == ["x", "y"]


def test_build_r1_dimension():
    A = algebra_from_text(R1_TEXT)
    # standard monomials: 1,x,x2,y,y2,z,z2,yz,y2z,yz2,y2z2,xz,x2z
    assert A.dim == 13
    assert A.e == 3
    assert (2, 0, 1) in A.basis
    degs = sorted(sum(m) for m in A.basis)
    assert degs[0] == 0 and max(degs) == 4


def test_build_hypersurface():
    A = algebra_from_text("vars x; rels x^2;")
    assert A.dim == 2
    assert A.basis == [(0,), (1,)]


def test_build_square_of_max_ideal():
    A = algebra_from_text("vars x,y; rels x^2,x*y,y^2;")
    assert A.dim == 3
    assert A.socle_basis.ncols == 2  # socle is the whole maximal ideal
    assert A.e == 2


def test_socle_examples():
    A = algebra_from_text("vars x,y; rels x^2,y^2;")
    vs = socle(A)
    assert len(vs) == 1  # spanned by xy
    B = algebra_from_text("vars x; rels x^2;")
    assert len(socle(B)) == 1


def test_gorenstein():
    assert gorenstein_test(algebra_from_text("vars x,y; rels x^2,y^2;"))
    assert not gorenstein_test(algebra_from_text("vars x,y; rels x^2,x*y,y^2;"))
    assert gorenstein_test(algebra_from_text("vars x; rels x^2;"))


def test_hilbert_data():
    A = algebra_from_text("vars x,y; rels x^2,y^2;")
    assert A.hilbert.dims == [1, 2, 1]
    assert A.hilbert.total == A.dim


def test_non_artinian_rejected():
    with pytest.raises(AlgebraBuildError, match="Artinian"):
        algebra_from_text("vars x,y; rels x^2;")


def test_linear_term_rejected():
    with pytest.raises(AlgebraBuildError, match="linear term"):
        algebra_from_text("vars x,y; rels x^2 + y, y^3;")


def test_general_relations_match_monomial_path():
    # x^2 - y^2 is not monomial; quotient k[x,y]/(x^2 - y^2, x*y) has dim 4
    A = algebra_from_text("vars x,y; rels x^2 - y^2, x*y; trunc 6;")
    assert A.dim == 4
    # x^3 = x*y^2 = 0 in this ring, so actions are nilpotent of index 3
    cube = A.action[0].matmul(A.action[0]).matmul(A.action[0])
    assert cube.is_zero()
    assert gorenstein_test(A)


def test_actions_commute_and_satisfy_relations():
    A = algebra_from_text(R1_TEXT)
    x, y, z = A.action
    assert x.matmul(y) == y.matmul(x)
    assert x.matmul(z) == z.matmul(x)
    # x*y = 0 and x^3 = 0 hold on the regular representation
    assert x.matmul(y).is_zero()
    assert x.matmul(x).matmul(x).is_zero()


def test_fibre_product_paper_example():
    S = algebra_from_text("vars x,y; rels x^2,y^2;")
    T = algebra_from_text("vars z,w; rels z^2,w^2;")
    R = fibre_product(S, T)
    assert R.dim == S.dim + T.dim - 1 == 7
    assert R.e == 4
    assert len(R.presentation.relations) == 8


def test_fibre_product_rejects_field_factor():
    S = algebra_from_text("vars x,y; rels x^2,y^2;")
    converted = parse_presentation("field F 101; vars x,y; rels x^2,y^2;")
    with pytest.raises(AlgebraBuildError, match="field"):
        fibre_product(S, build_algebra(converted))


def test_algebra_hash_stable():
    A = algebra_from_text(R1_TEXT)
    B = algebra_from_text(R1_TEXT)
    assert A.hash() == B.hash()
