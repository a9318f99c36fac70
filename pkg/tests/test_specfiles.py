from fractions import Fraction as F

import pytest

from cosetkit.specfiles import (ParseError, parse_branching_claim, parse_branching_table,
                                parse_embedding, parse_rational)

GOOD = """
# comment line
[ambient]
algebra = A1
level = 1   # trailing comment
[sub.1]
abelian = 1
[projection]
1
"""


def test_rationals():
    assert parse_rational(" 3/4 ") == F(3, 4)
    assert parse_rational("-2") == -2
    for bad in ("1.5", "a", "1/", "", "2/0x"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_minimal_embedding():
    spec = parse_embedding(GOOD)
    assert spec.projection == ((1,),)
    assert spec.ideals[0].is_abelian and spec.ideals[0].kappa is None


def test_corpus_files_parse(data_dir):
    for path in data_dir.glob("*_level*.txt"):
        if path.stem.endswith("_table"):
            continue
        spec = parse_embedding(path)
        assert spec.name == path.stem


@pytest.mark.parametrize("text,fragment", [
    (GOOD.replace("[ambient]", "[outer]"), "unknown section"),
    (GOOD.replace("level = 1", "level = 1\ncolour = red"), "unknown key"),
    (GOOD.replace("level = 1", "level = 1\nlevel = 2"), "duplicate key"),
    (GOOD.replace("level = 1", "level = x"), "levels must be integers"),
    (GOOD.replace("level = 1", "level = 0"), "positive level"),
    (GOOD.replace("algebra = A1", "algebra = Q7"), ""),
    ("algebra = A1\n" + GOOD, "before the first section"),
    (GOOD.replace("[projection]\n1", ""), "either [projection] or [branching]"),
    (GOOD.replace("[projection]\n1", "[projection]\n1 2"), "projection must be"),
    (GOOD.replace("[projection]\n1", "[projection]\none"), "not a rational"),
    (GOOD.replace("[sub.1]", "[sub.x]"), "bad section name"),
    (GOOD.replace("abelian = 1", "algebra = A1\nabelian = 1"), "mixes"),
    (GOOD.replace("[projection]\n1", "[branching]\nlabels=[1], weight=2"), "unknown or missing keys"),
    (GOOD.replace("[projection]\n1", "[branching]\nlabels=[1], inside=maybe"), "true or false"),
    (GOOD.replace("[projection]\n1", "[branching]\nlabels=[1,2]"), "wrong length"),
    (GOOD.replace("[projection]\n1", "[branching]\nlabels=(1)"), "malformed label list"),
])
def test_embedding_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_embedding(text)
    assert fragment in str(info.value)


def test_error_carries_line_number():
    with pytest.raises(ParseError, match=r"<input>:6:"):
        parse_embedding(GOOD.replace("level = 1", "level = 1\ncolour = red"))


def test_claim_grammar(data_dir):
    claim = parse_branching_claim(data_dir / "gko_m2.txt")
    assert (claim.k1, claim.k2, claim.m) == (1, 2, 2)
    assert [(r.target, r.cosets) for r in claim.rows] == [(0, [(0, 1)]), (2, [(F(3, 5), 1)])]
    multi = parse_branching_claim("k1 = 1, k2 = 3, m = 3, l1 = 1\ntarget=1 ; coset=(1/16, 1), (9/16, 2)\n")
    assert multi.l1 == 1 and multi.rows[0].cosets == [(F(1, 16), 1), (F(9, 16), 2)]


@pytest.mark.parametrize("text,fragment", [
    ("", "empty claim"),
    ("k1 = 1, k2 = 2\n", "header needs"),
    ("k1 = 1, k2 = 2, m = 2, q = 1\n", "header needs"),
    ("k1 = 1, k2 = two, m = 2\n", "integers"),
    ("k1 = 1, k2 = 2, m = 2\ntarget=0 coset=(0, 1)\n", "expected 'target"),
    ("k1 = 1, k2 = 2, m = 2\ntarget=a ; coset=(0, 1)\n", "target must be"),
    ("k1 = 1, k2 = 2, m = 2\ntarget=0 ; coset=0, 1\n", "malformed coset"),
    ("k1 = 1, k2 = 2, m = 2\ntarget=0 ; coset=(0, 0)\n", "positive"),
    ("k1 = 1, k2 = 2, m = 2\ntarget=0 ; coset=(0, 1)\ntarget=0 ; coset=(1, 1)\n", "duplicate target"),
    ("k1 = 1, k2 = 2, m = 2, l1 = 3\n", "alcoves"),
])
def test_claim_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_branching_claim(text)
    assert fragment in str(info.value)


def test_table_grammar(data_dir):
    table = parse_branching_table(data_dir / "su9_in_e8_level2_table.txt")
    assert table.name == "su9_in_e8_level2_table"
    assert len(table.rows) == 5 and table.rows[table.vacuum_index].vacuum
    vac = table.rows[table.vacuum_index]
    assert [s.label for s, _ in vac.a_bundle] == ["2L0", "2L3", "2L6"]
    small = parse_branching_table("vacuum A: (0,h=0,d=1) | C: (0,h=0,d=1)\n"
                                  "A: (x,h=1/2,d=1)*2 | C: (y,h=1/2,d=2)\n")
    assert small.rows[1].a_bundle[0][1] == 2
    assert small.rows[1].a_dim == 2 and small.rows[1].c_dim == 2


@pytest.mark.parametrize("text,fragment", [
    ("", "empty branching table"),
    ("A: (0,h=0,d=1) C: (0,h=0,d=1)\n", "expected '[vacuum]"),
    ("vacuum A: (0,h=0) | C: (0,h=0,d=1)\n", "expected (label"),
    ("vacuum A: 0,h=0,d=1 | C: (0,h=0,d=1)\n", "malformed sector"),
    ("vacuum A: (0,h=0,d=0.5) | C: (0,h=0,d=1)\n", "below 1"),
    ("vacuum A: (0,h=0.5,d=1) | C: (0,h=0,d=1)\n", "not a rational"),
    ("vacuum A: (0,h=0,d=1)*0 | C: (0,h=0,d=1)\n", "positive"),
    ("A: (0,h=0,d=1) | C: (0,h=0,d=1)\n", ""),
])
def test_table_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_branching_table(text)
    assert fragment in str(info.value)
