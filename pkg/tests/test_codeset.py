import itertools
import logging

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import o_gc, o_ham, o_rc, o_words
from dnacodex import codeset
from dnacodex.codeset import CodeParams, CodeSet, ViolationKind, conflicts, verify_strong, verify_weak
from dnacodex.errors import InvalidParams, LengthMismatch, ParseError
from dnacodex.seqcore import parse


def cs(params, *words):
    return CodeSet(CodeParams(*params), [parse(w) for w in words])


def o_weak(words, n, d, w):
    return all(o_gc(s) == w for s in words) and all(o_ham(a, b) >= d for a, b in itertools.combinations(words, 2))


def o_strong(words, n, d, w):
    return o_weak(words, n, d, w) and all(o_ham(a, o_rc(b)) >= d for a in words for b in words)


# random small codes over the (5, *, 2) or (4, *, 2) word sets
small_codes = st.sampled_from([(4, 2), (5, 2), (5, 3)]).flatmap(
    lambda nw: st.tuples(
        st.just(nw[0]),
        st.integers(1, nw[0]),
        st.just(nw[1]),
        st.lists(st.sampled_from(o_words(*nw) + o_words(nw[0], 1)), max_size=8, unique=True),
    )
)


def test_params_validation():
    with pytest.raises(InvalidParams):
        CodeParams(4, 5, 2)
    with pytest.raises(InvalidParams):
        CodeParams(4, 0, 2)
    with pytest.raises(InvalidParams):
        CodeParams(4, 3, 5)
    with pytest.raises(InvalidParams):
        CodeParams(33, 3, 2)


def test_codeset_sorted_and_deduplicated():
    c = cs((4, 1, 2), "TTCC", "ACGA", "TTCC")
    assert c.strings() == ["ACGA", "TTCC"]
    assert parse("TTCC") in c
    assert c == cs((4, 1, 2), "ACGA", "TTCC")
    assert len(c.with_member(parse("GGAA"))) == 3
    assert c.without([parse("ACGA")]).strings() == ["TTCC"]


def test_codeset_length_mismatch():
    with pytest.raises(LengthMismatch):
        cs((4, 1, 2), "ACG")


def test_weak_valid_example():
    assert verify_weak(cs((5, 3, 2), "AAGGA", "AGAAG")).valid
    assert o_ham("AAGGA", "AGAAG") == 4


def test_empty_code_valid():
    assert verify_weak(cs((5, 3, 2))).valid
    assert verify_strong(cs((5, 3, 2))).valid


def test_weak_hamming_violation():
    r = verify_weak(cs((5, 3, 2), "GGAAA", "GGAAT"))
    assert not r.valid
    assert [(v.kind, v.value) for v in r.violations] == [(ViolationKind.HAMMING_PAIR, 1)]


def test_gc_violation_reported():
    r = verify_weak(cs((4, 1, 2), "AAAA"))
    assert [(v.kind, v.value) for v in r.violations] == [(ViolationKind.GC_CONTENT, 0)]


def test_strong_palindrome():
    r = verify_strong(cs((4, 3, 2), "ACGT"))
    assert any(v.kind is ViolationKind.SELF_COMPLEMENT and v.value == 0 for v in r.violations)
    r = verify_strong(cs((4, 1, 2), "ACGT", "AACC"))
    assert not r.valid


def test_strong_complement_pair():
    # AACC and GGTT are reverse complements of each other
    r = verify_strong(cs((4, 2, 2), "AACC", "GGTT"))
    kinds = {v.kind for v in r.violations}
    assert ViolationKind.COMPLEMENT_PAIR in kinds


def test_report_lists_every_violation():
    r = verify_weak(cs((5, 3, 2), "GGAAA", "GGAAT", "GGAAC", "AAAAA"))
    # three close pairs plus one GC violation (GGAAC has GC 3 as well)
    gc = [v for v in r.violations if v.kind is ViolationKind.GC_CONTENT]
    ham = [v for v in r.violations if v.kind is ViolationKind.HAMMING_PAIR]
    assert len(gc) == 2
    assert len(ham) == 4  # all six pairs except those with distance >= 3
    assert r.to_dict()["valid"] is False
    assert "INVALID" in str(r)


@given(small_codes)
def test_verify_matches_oracle(case):
    n, d, w, words = case
    c = CodeSet(CodeParams(n, d, w), [parse(s) for s in words])
    assert verify_weak(c).valid == o_weak(words, n, d, w)
    assert verify_strong(c).valid == o_strong(words, n, d, w)


@given(small_codes)
def test_strong_implies_weak(case):
    n, d, w, words = case
    c = CodeSet(CodeParams(n, d, w), [parse(s) for s in words])
    if verify_strong(c).valid:
        assert verify_weak(c).valid


def test_conflicts_examples():
    empty = cs((4, 3, 2))
    assert conflicts(empty, parse("AACC")) == frozenset()
    c = cs((4, 3, 2), "AACC", "CTCA")
    assert parse("AACC") in conflicts(c, parse("AACC"))


def test_conflicts_length_mismatch():
    with pytest.raises(LengthMismatch):
        conflicts(cs((4, 3, 2)), parse("AAC"))


@given(small_codes, st.data())
def test_conflicts_iff_add_keeps_strong(case, data):
    n, d, w, words = case
    p = CodeParams(n, d, w)
    strong = [s for s in words if o_gc(s) == w]
    # keep only a strong-valid base code
    base = []
    for s in strong:
        if o_strong(base + [s], n, d, w):
            base.append(s)
    code = CodeSet(p, [parse(s) for s in base])
    # sigma must be admissible and new; re-adding a member is a no-op
    pool = [s for s in o_words(n, w) if o_ham(s, o_rc(s)) >= d and s not in base]
    if not pool:
        return
    sig = parse(data.draw(st.sampled_from(pool)))
    assert (not conflicts(code, sig)) == verify_strong(code.with_member(sig)).valid


@given(small_codes)
def test_member_conflicts_nothing_else(case):
    n, d, w, words = case
    base = []
    for s in words:
        if o_strong(base + [s], n, d, w):
            base.append(s)
    code = CodeSet(CodeParams(n, d, w), [parse(s) for s in base])
    for s in code:
        assert conflicts(code.without([s]), s) == frozenset()


def test_halving_examples(caplog):
    assert codeset.halving_upper_bound(9) == 4
    assert codeset.halving_upper_bound(30) == 15
    with caplog.at_level(logging.WARNING):
        assert codeset.halving_upper_bound(1) == 0
    assert "degenerate" in caplog.text
    with pytest.raises(InvalidParams):
        codeset.halving_upper_bound(0)


@given(small_codes)
def test_code_file_roundtrip(tmp_path_factory, case):
    n, d, w, words = case
    c = CodeSet(CodeParams(n, d, w), [parse(s) for s in words])
    path = tmp_path_factory.mktemp("codes") / "c.txt"
    codeset.write_code(c, path)
    assert codeset.read_code(path) == c
    assert codeset.parse_code_text(codeset.format_code(c)) == (list(c.members), c.params)


def test_code_file_format():
    text = codeset.format_code(cs((4, 3, 2), "TTCC", "ACGA"))
    assert text == "# n=4 d=3 w=2 size=2\nACGA\nTTCC\n"


def test_code_file_errors(tmp_path):
    with pytest.raises(ParseError) as exc:
        codeset.parse_code_text("# n=4 d=3 w=2\nACGA\nACXA\n")
    assert exc.value.line == 3
    p = tmp_path / "bare.txt"
    p.write_text("ACGA\n")
    with pytest.raises(ParseError):
        codeset.read_code(p)
    assert codeset.read_code(p, CodeParams(4, 3, 2)).strings() == ["ACGA"]
    with pytest.raises(ParseError):
        codeset.parse_code_text("# n=4 d=9 w=2\n")
