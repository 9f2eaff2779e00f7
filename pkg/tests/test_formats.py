import random

import pytest
from hypothesis import given, settings

from conftest import open_books
from isocontact.certifier import FiveFoldDescription
from isocontact.formats import (
    FiveFoldFile,
    FormatError,
    parse_fivefold_file,
    parse_openbook_file,
    render_fivefold,
    render_openbook,
)
from isocontact.openbook import ob_connected_sum, ob_first_homology, ob_stabilize, random_open_book


def test_parse_examples():
    f = parse_openbook_file("surface g=0 n=1\nword\n")
    assert f.book.page.genus == 0 and len(f.book.monodromy) == 0 and f.c1 == "auto"
    f = parse_openbook_file("surface g=1 n=1\nword +a1 +b1   # trefoil\n")
    assert f.book.monodromy.render() == "+a1 +b1"
    f = parse_openbook_file("# comment\nsurface g=0 n=2\nword +d1 +d1\ncontact c1=zero\nlabel rp3\n")
    assert (f.c1, f.book.label) == ("zero", "rp3")


def test_validation_error_has_line_number():
    with pytest.raises(FormatError) as exc:
        parse_openbook_file("surface g=0 n=1\nword +a1\n")
    assert exc.value.lineno == 2
    assert "line 2" in str(exc.value)


@pytest.mark.parametrize(
    "text,line",
    [
        ("surface g=0 n=1\nbogus 1\n", 2),
        ("surface g=0\n", 1),
        ("surface g=x n=1\n", 1),
        ("surface g=0 n=1 q=2\n", 1),
        ("surface g=0 n=1\nword a1\n", 2),
        ("surface g=0 n=1\ncontact c1=perhaps\n", 2),
        ("surface g=0 n=1\nsurface g=0 n=1\n", 2),
        ("surface g=0 n=0\n", 1),
        ("word +a1\n", None),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(FormatError) as exc:
        parse_openbook_file(text)
    assert exc.value.lineno == line


@settings(max_examples=80, deadline=None)
@given(open_books(), open_books())
def test_round_trip_through_sums(x, y):
    for ob in (x, ob_connected_sum(x, y), ob_stabilize(x, -1)):
        text = render_openbook(ob)
        back = parse_openbook_file(text).book
        assert back == ob
        assert render_openbook(back) == text


def test_round_trip_keeps_homology_of_summed_pages():
    rng = random.Random(3)
    for _ in range(50):
        ob = ob_connected_sum(ob_stabilize(random_open_book(rng), 1), random_open_book(rng))
        back = parse_openbook_file(render_openbook(ob, "zero"))
        assert back.c1 == "zero"
        assert ob_first_homology(back.book) == ob_first_homology(ob)


def test_whitespace_normalized():
    messy = "  surface   g=1  n=1  \n\n word   +a1    +b1 \nlabel   trefoil knot  \n"
    assert render_openbook(parse_openbook_file(messy).book) == "surface g=1 n=1\nword +a1 +b1\nlabel trefoil knot\n"


def test_fivefold_examples():
    f = parse_fivefold_file("fivefold\ncontact c1=zero\n")
    assert f.description.is_sphere and f.c1 == "zero"
    f = parse_fivefold_file("fivefold\nsummand s2xs3 count=1\ncontact c1=zero\n")
    assert f.description.s2xs3_count == 1
    f = parse_fivefold_file("fivefold\nsummand s2xs3 count=3\nsummand mk k=4 count=1\nsummand twisted count=2\n")
    assert f.description == FiveFoldDescription(3, ((4, 1),), 2)
    assert f.c1 is None


@pytest.mark.parametrize(
    "text",
    [
        "fivefold\nsummand mk k=1 count=1\n",
        "summand s2xs3 count=1\n",
        "fivefold\nsummand lens count=1\n",
        "fivefold\ncontact c1=auto\n",
        "fivefold\nsummand s2xs3 count=-1\n",
        "fivefold\ncontact c1=zero\ncontact c1=zero\n",
        "",
    ],
)
def test_fivefold_errors(text):
    with pytest.raises(FormatError):
        parse_fivefold_file(text)


def test_fivefold_round_trip():
    f = FiveFoldFile(FiveFoldDescription(2, ((3, 1), (5, 2)), 1), "nonzero", "mix")
    assert parse_fivefold_file(render_fivefold(f)) == f


def test_sample_files_parse(samples_dir):
    for p in samples_dir.glob("*.ob"):
        parse_openbook_file(p.read_text())
    for p in samples_dir.glob("*.ff"):
        parse_fivefold_file(p.read_text())
