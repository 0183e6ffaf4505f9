import io

import pytest

from dirnull import (
    DegreeHistogram,
    GenerationConfig,
    compute_stats,
    export_stats,
    frd_generate,
    read_stats,
    write_edge_list,
)
from dirnull.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_SUPPORT,
    EXIT_TOLERANCE,
    EXIT_VALIDATION,
    main,
)
from targets import frd_target


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture(scope="module")
def original_graph(tmp_path_factory):
    """Edge list of a synthetic graph with plenty of reciprocal edges."""
    target = frd_target(n=30_000, rec_nodes=12_000, in_nodes=15_000, out_nodes=15_000, d_max=150)
    g, _ = frd_generate(*target, GenerationConfig(seed=0))
    path = tmp_path_factory.mktemp("orig") / "orig.txt"
    with open(path, "w") as fh:
        write_edge_list(g, fh)
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestStats:
    def test_reciprocal_pair(self, tmp_path, capsys):
        code, out, _ = run(["stats", write(tmp_path / "g.txt", "1 2\n2 1\n")], capsys)
        assert code == EXIT_OK
        assert "\nr\t1\n" in out

    def test_one_way_edge(self, tmp_path, capsys):
        code, out, _ = run(["stats", write(tmp_path / "g.txt", "# c\n1 2\n")], capsys)
        assert code == EXIT_OK
        assert "\nr\t0\n" in out

    def test_parse_error_has_file_and_line(self, tmp_path, capsys):
        code, _, err = run(["stats", write(tmp_path / "bad.txt", "1 2\n1 2 3\n")], capsys)
        assert code == EXIT_INPUT
        assert "bad.txt: line 2" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run(["stats", str(tmp_path / "nope.txt")], capsys)
        assert code == EXIT_INPUT

    def test_unknown_flag_rejected(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["stats", write(tmp_path / "g.txt", "1 2\n"), "--frobnicate"])
        assert info.value.code == 2

    def test_bad_seed_rejected(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["generate", "--input", write(tmp_path / "g.txt", "1 2\n"), "--seed", "-3"])


class TestGenerate:
    def test_same_seed_same_bytes(self, original_graph, tmp_path, capsys):
        outs = []
        for i in range(2):
            out = tmp_path / f"out{i}.txt"
            code, _, err = run(["generate", "--input", original_graph, "--seed", "17", "-o", str(out)], capsys)
            assert code == EXIT_OK
            assert "seed\t17" in err
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_omitted_seed_is_echoed_and_reproducible(self, original_graph, tmp_path, capsys):
        first = tmp_path / "a.txt"
        _, _, err = run(["generate", "--input", original_graph, "-o", str(first)], capsys)
        seed = next(l.split("\t")[1] for l in err.splitlines() if l.startswith("seed\t"))
        again = tmp_path / "b.txt"
        run(["generate", "--input", original_graph, "--seed", seed, "-o", str(again)], capsys)
        assert first.read_bytes() == again.read_bytes()

    def test_frd_on_graph_without_reciprocity(self, tmp_path, capsys):
        # one-way chain plus star: no reciprocal pairs
        lines = [f"{i} {i + 1}" for i in range(300)] + [f"500 {i}" for i in range(300)]
        src = write(tmp_path / "g.txt", "\n".join(lines) + "\n")
        out, report = tmp_path / "o.txt", tmp_path / "r.txt"
        code, _, _ = run(["generate", "--model", "frd", "--input", src, "--seed", "1",
                          "-o", str(out), "--report", str(report)], capsys)
        assert code == EXIT_OK
        doc = read_stats(open(report))
        assert int(doc["m_rec"]) <= 4
        assert doc.report["model"] == "frd"
        assert int(doc.report["requested_edges"]) == 600

    def test_from_dists(self, tmp_path, capsys):
        rec = DegreeHistogram.from_mapping("rec", {0: 60, 1: 40})
        inn = DegreeHistogram.from_mapping("in", {0: 50, 2: 50})
        out = DegreeHistogram.from_mapping("out", {0: 0, 1: 100})
        g, _ = frd_generate(rec, inn, out, GenerationConfig(seed=3))
        dists = write(tmp_path / "d.txt", export_stats(compute_stats(g)).getvalue())
        code, _, _ = run(["generate", "--dists", dists, "--seed", "4", "-o", str(tmp_path / "o.txt")], capsys)
        assert code == EXIT_OK
        code, _, _ = run(["generate", "--model", "fd", "--dists", dists, "--seed", "4",
                          "-o", str(tmp_path / "o2.txt")], capsys)
        assert code == EXIT_OK

    def test_invalid_distributions(self, tmp_path, capsys):
        text = (
            "# dirnull-stats 1\nn\t3\n"
            "[distribution rec]\ndegree\tcount\n0\t2\n1\t1\n"
            "[distribution in]\ndegree\tcount\n0\t3\n"
            "[distribution out]\ndegree\tcount\n0\t3\n"
        )
        code, _, err = run(["generate", "--dists", write(tmp_path / "d.txt", text), "--seed", "1"], capsys)
        assert code == EXIT_VALIDATION
        assert "odd" in err

    def test_fd_needs_total_distributions(self, tmp_path, capsys):
        text = "# dirnull-stats 1\nn\t3\n[distribution rec]\ndegree\tcount\n0\t3\n"
        code, _, _ = run(["generate", "--model", "fd", "--dists", write(tmp_path / "d.txt", text)], capsys)
        assert code == EXIT_VALIDATION


class TestExpected:
    def test_blowup_prediction(self, tmp_path, capsys):
        text = "# dirnull-stats 1\nn\t1000\n[distribution total-in]\ndegree\tcount\n1\t1000\n"
        code, out, _ = run(["expected", "--dists", write(tmp_path / "d.txt", text), "--xmax", "5"], capsys)
        assert code == EXIT_OK
        rows = {int(l.split("\t")[0]): l.split("\t") for l in out.splitlines() if l[:1].isdigit()}
        assert float(rows[1][2]) == pytest.approx(904.837, abs=1e-3)
        assert rows[1][1] == "1000"
        assert "tail" in out

    def test_no_blowup(self, tmp_path, capsys):
        text = "# dirnull-stats 1\nn\t1000\n[distribution in]\ndegree\tcount\n1\t1000\n"
        code, out, _ = run(["expected", "--dists", write(tmp_path / "d.txt", text),
                            "--kind", "in", "--blowup", "1"], capsys)
        row = next(l for l in out.splitlines() if l.startswith("1\t"))
        assert float(row.split("\t")[2]) == pytest.approx(367.879, abs=1e-3)


def _summary(out):
    lines = out.split("[summary]\n")[1].splitlines()[1:]
    return {l.split("\t")[0]: (l.split("\t")[1], l.split("\t")[2]) for l in lines}


class TestCompare:
    def test_self_comparison(self, original_graph, capsys):
        code, out, _ = run(["compare", original_graph, original_graph], capsys)
        assert code == EXIT_OK
        assert all(err == "0.000000" for err, _ in _summary(out).values())
        rows = [l for l in out.splitlines() if l[:1].isdigit()]
        assert rows and all(l.split("\t")[4] == "0.000000" for l in rows)

    def test_frd_beats_fd_on_reciprocal_degrees(self, original_graph, tmp_path, capsys):
        frd, fd = tmp_path / "frd.txt", tmp_path / "fd.txt"
        run(["generate", "--model", "frd", "--input", original_graph, "--seed", "2", "-o", str(frd)], capsys)
        run(["generate", "--model", "fd", "--input", original_graph, "--seed", "2", "-o", str(fd)], capsys)
        # tolerance sits above the structural low-degree smearing of the model
        args = ["--kinds", "rec", "--tolerance", "0.3"]
        code_frd, out_frd, _ = run(["compare", original_graph, str(frd), *args], capsys)
        code_fd, out_fd, _ = run(["compare", original_graph, str(fd), *args], capsys)
        assert code_frd == EXIT_OK, out_frd
        assert code_fd in (EXIT_TOLERANCE, EXIT_SUPPORT)
        assert float(_summary(out_frd)["rec"][0]) < 0.3
        assert float(_summary(out_fd)["rec"][0]) > 0.9

    def test_tolerance_failure_code(self, original_graph, tmp_path, capsys):
        frd = tmp_path / "frd.txt"
        run(["generate", "--input", original_graph, "--seed", "2", "-o", str(frd)], capsys)
        code, out, _ = run(["compare", original_graph, str(frd), "--tolerance", "0.001"], capsys)
        assert code == EXIT_TOLERANCE
        assert "fail" in out

    def test_disjoint_supports(self, tmp_path, capsys):
        matching = "\n".join(f"{2 * i} {2 * i + 1}" for i in range(100))
        ring = "\n".join(f"{i} {(i + k) % 60}" for i in range(60) for k in range(1, 5))
        a = write(tmp_path / "a.txt", matching + "\n")
        b = write(tmp_path / "b.txt", ring + "\n")
        code, out, _ = run(["compare", a, b, "--kinds", "total-out"], capsys)
        assert code == EXIT_SUPPORT
        assert "inf" in out and "absent" in out
        assert "support-mismatch" in out

    def test_unknown_kind(self, original_graph, capsys):
        code, _, _ = run(["compare", original_graph, original_graph, "--kinds", "sideways"], capsys)
        assert code == EXIT_VALIDATION
