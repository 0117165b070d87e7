import io
import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from pdloop import report
from pdloop.algebra import GradedGroup
from pdloop.cli import main, run
from pdloop.decompose import decompose
from pdloop.errors import HypothesisError, InputError
from pdloop.pdcomplex import Flags, PDComplex, SkeletonClass, Tri

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def cli(*argv, tmp_path=None):
    buf = io.StringIO()
    args = list(argv)
    if tmp_path is not None:
        args += ["--catalog", str(tmp_path / "cat")]
    code, doc = run(args, buf)
    return code, buf.getvalue(), doc


def sample(name):
    return str(SAMPLES / name)


# documented examples

def test_decompose_example_fibre():
    code, text, doc = cli("decompose", sample("s2xs3_conn_W.json"))
    assert code == 0
    assert "(S³ ∨ P³(2)) ∨ (P³(2) ∧ ΩS²)" in text
    assert doc["result"]["decomposition"]["fibre_display"] == "(S³ ∨ P³(2)) ∨ (P³(2) ∧ ΩS²)"
    assert "Thm 1" in doc["citations"]


def test_hilbert_example_cross_check():
    code, text, doc = cli("hilbert", sample("sum2_s2xs3.json"), "--field", "Q", "--cap", "4",
                          "--method", "both")
    assert code == 0
    assert doc["result"]["decomposition"] == [1, 2, 6, 15, 40]
    assert doc["result"]["one_relator"] == [1, 2, 6, 15, 40]
    assert "cross-check: equal" in text


def test_decompose_wu_fails_bottom_degree():
    code, text, doc = cli("decompose", sample("wu.json"))
    assert code == 1
    assert "no ℤ summand below top degree" in text
    assert doc["error"]["hypothesis"]


def test_hilbert_single_methods():
    for method, key in (("decomposition", "decomposition"), ("one-relator", "one_relator")):
        code, _, doc = cli("hilbert", sample("sum2_s2xs3.json"), "--cap", "4", "--method", method)
        assert code == 0 and doc["result"][key] == [1, 2, 6, 15, 40]


def test_validate_and_primes():
    code, text, _ = cli("validate", sample("s2xs3.json"))
    assert code == 0 and "valid" in text
    code, text, doc = cli("primes", sample("s2xts3_conn_W.json"))
    assert code == 0 and set(doc["result"]) >= {"evidence", "retraction", "skeleton", "full"}


def test_zk_commands():
    code, text, doc = cli("zk", sample("tri_join.json"), "--decompose")
    assert code == 0 and "ΩS⁵ × ΩS⁵" in text
    code, _, doc = cli("zk", sample("square.json"))
    assert code == 0 and doc["result"]["skeleton"] == {"3": "Z^2"}
    code, _, doc = cli("zk", sample("rp2_6.json"), "--decompose")
    assert code == 1


# exit codes

@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["decompose"],
    ["decompose", "/nonexistent/file.json"],
    ["decompose", "product:S2xS3", "--field", "F4"],
    ["decompose", "product:S2xS3", "--cap", "many"],
    ["decompose", "product:S2xS3", "--localize", "two"],
    ["gyrate", "product:S2xS3"],
    ["catalog", "get"],
    ["sum", "product:S2xS3", "nonsense:1"],
])
def test_input_errors_exit_2(argv):
    code, text, doc = cli(*argv)
    assert code == 2 and doc["exit_code"] == 2 and text.startswith("error")


def test_invalid_json_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli("validate", str(bad))[0] == 2
    bad.write_text(json.dumps({"dim": 5}))
    assert cli("validate", str(bad))[0] == 2


def test_main_returns_code():
    assert main(["validate", sample("s2xs3.json")]) == 0
    assert main(["decompose", sample("wu.json")]) == 1


def test_unwritable_json_path():
    code, _, _ = cli("validate", sample("s2xs3.json"), "--json", "/nonexistent/dir/out.json")
    assert code == 2


def _pd(draw_data):
    m, n, extra, tors, skel, retract = draw_data
    h = {m: (1, []), n - m: (1, [])}
    if extra:
        h[extra] = (1, [])
    if tors:
        p, e = {2: (2, 1), 3: (3, 1), 9: (3, 2)}[tors]
        h[m] = (h[m][0], [(p, e, 1)])
        low, high = m, n - 1 - m
        if high not in h:
            h[high] = (0, [])
        if high != low:
            h[high] = (h[high][0], h[high][1] + [(p, e, 1)])
    return PDComplex("X", n, m, GradedGroup.of(h),
                     Flags(SkeletonClass(skel), Tri(retract), Tri.UNKNOWN))


pd_params = st.tuples(
    st.integers(2, 4), st.integers(5, 11), st.sampled_from([0, 3, 4, 5]),
    st.sampled_from([0, 2, 3, 9]),
    st.sampled_from([s.value for s in SkeletonClass]),
    st.sampled_from([t.value for t in Tri]),
)


@settings(max_examples=40, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(pd_params)
def test_exit_code_matches_library_error_taxonomy(tmp_path, params):
    try:
        M = _pd(params)
    except InputError:
        return
    path = tmp_path / "m.json"
    path.write_text(M.dumps())
    try:
        decompose(M)
        expected = 0
    except HypothesisError:
        expected = 1
    except InputError:
        expected = 2
    code, _, doc = cli("decompose", str(path), "--cap", "6")
    assert code == expected
    if expected == 1:
        assert doc["error"]["type"] == "HypothesisError"


@given(st.text(max_size=30))
def test_garbage_json_never_crashes(text):
    import tempfile
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write(text)
    code, _, _ = cli("validate", fh.name)
    assert code in (0, 1, 2)
    Path(fh.name).unlink()


# machine report

@pytest.mark.parametrize("argv", [
    ["decompose", "s2xs3_conn_W.json"],
    ["hilbert", "sum2_s2xs3.json", "--cap", "8"],
    ["primes", "s2xts3_conn_W.json"],
    ["zk", "tri_join.json", "--decompose"],
    ["validate", "wu.json"],
    ["decompose", "wu.json"],
])
def test_machine_report_rerender_idempotent(argv, tmp_path):
    out = tmp_path / "doc.json"
    argv = [argv[0], sample(argv[1]), *argv[2:], "--json", str(out)]
    _, text, doc = cli(*argv)
    reparsed = json.loads(out.read_text())
    assert reparsed == doc
    assert report.render_text(reparsed) == text
    assert report.dumps(json.loads(report.dumps(reparsed))) == out.read_text()


# catalog and constructors

def test_catalog_add_get_list_byte_stable(tmp_path):
    src = SAMPLES / "s2xs3_conn_W.json"
    code, _, _ = cli("catalog", "add", "w", str(src), tmp_path=tmp_path)
    assert code == 0
    stored = (tmp_path / "cat" / "w.json").read_text()
    out = tmp_path / "back.json"
    code, _, _ = cli("catalog", "get", "w", "-o", str(out), tmp_path=tmp_path)
    assert code == 0 and out.read_text() == stored
    assert PDComplex.loads(stored).dumps() == stored
    code, _, _ = cli("catalog", "add", "w", str(src), tmp_path=tmp_path)
    assert code == 2
    cli("catalog", "add", "tri", str(SAMPLES / "tri_join.json"), tmp_path=tmp_path)
    code, text, doc = cli("catalog", "list", tmp_path=tmp_path)
    assert doc["result"]["names"] == ["tri", "w"]
    code, _, doc = cli("zk", "tri", tmp_path=tmp_path)
    assert code == 0


def test_sum_and_gyrate_write_output(tmp_path):
    out = tmp_path / "sum.json"
    code, _, _ = cli("sum", sample("s2xs3.json"), sample("s2xs3.json"), "-o", str(out))
    assert code == 0
    M = PDComplex.loads(out.read_text())
    assert M.homology == GradedGroup.of({2: (2, []), 3: (2, []), 5: (1, [])})
    out2 = tmp_path / "gyr.json"
    code, _, _ = cli("gyrate", str(out), "-k", "2", "-o", str(out2))
    assert code == 0
    G = PDComplex.loads(out2.read_text())
    assert G.dim == 6 and G.rank(2) == 2
