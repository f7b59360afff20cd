import json

from categraph.cli import main


def run(args):
    return main([str(a) for a in args])


def chain(workdir, seed=5):
    """generate -> exact -> sample -> observe -> estimate in workdir."""
    edges = workdir / "edges.tsv"
    cats = workdir / "cats.tsv"
    assert run(["generate", "--sizes", "30,30,40", "--k", "4",
                "--alpha", "0.2", "--seed", seed,
                "--out-edges", edges, "--out-categories", cats]) == 0
    assert run(["exact", "--edges", edges, "--categories", cats,
                "--format", "json", "--out", workdir / "truth.json"]) == 0
    assert run(["sample", "--edges", edges, "--categories", cats,
                "--sampler", "rw", "--n", "200", "--seed", seed,
                "--out", workdir / "trace.jsonl"]) == 0
    assert run(["observe", "--edges", edges, "--categories", cats,
                "--trace", workdir / "trace.jsonl", "--mode", "star",
                "--out", workdir / "log.jsonl"]) == 0
    assert run(["estimate", "--log", workdir / "log.jsonl",
                "--size-est", "star", "--population", "exact:100",
                "--out", workdir / "est.json"]) == 0
    cfg = {
        "seed": 3, "replicates": 2, "sample_sizes": [40, 80],
        "samplers": ["uis"],
        "graph": {"edge_file": str(edges), "category_file": str(cats)},
    }
    cfg_path = workdir / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    assert run(["evaluate", "--config", cfg_path,
                "--csv", workdir / "report.csv",
                "--json", workdir / "report.json"]) == 0
    return [workdir / name for name in
            ("edges.tsv", "cats.tsv", "truth.json", "trace.jsonl",
             "log.jsonl", "est.json", "report.csv", "report.json")]


def test_full_chain_products_parse(tmp_path):
    files = chain(tmp_path)
    for f in files:
        assert f.exists() and f.stat().st_size > 0
    truth = json.loads((tmp_path / "truth.json").read_text())
    assert {"N_mode", "categories", "edges"} <= set(truth)
    est = json.loads((tmp_path / "est.json").read_text())
    assert est["size_estimator"] == "star"
    report = (tmp_path / "report.csv").read_text().splitlines()
    assert report[0].startswith("quantity_kind,")
    assert len(report) > 1


def test_chain_byte_identical_across_runs(tmp_path):
    d1 = tmp_path / "run1"
    d2 = tmp_path / "run2"
    d1.mkdir()
    d2.mkdir()
    files1 = chain(d1)
    files2 = chain(d2)
    for f1, f2 in zip(files1, files2):
        assert f1.read_bytes() == f2.read_bytes(), f1.name


def test_multiple_walks_write_derived_traces(tmp_path):
    chain(tmp_path)  # reuse graph files
    assert run(["sample", "--edges", tmp_path / "edges.tsv",
                "--categories", tmp_path / "cats.tsv",
                "--sampler", "mhrw", "--n", "50", "--walks", "3",
                "--seed", "9", "--out", tmp_path / "multi.jsonl"]) == 0
    metas = []
    for i in range(3):
        lines = (tmp_path / f"multi.jsonl.{i}").read_text().splitlines()
        assert len(lines) == 51
        metas.append(json.loads(lines[0]))
    assert [m["seed"] for m in metas] == [[9, 0], [9, 1], [9, 2]]


def test_missing_file_sets_exit_code_and_stderr(tmp_path, capsys):
    code = run(["estimate", "--log", tmp_path / "nope.jsonl",
                "--out", tmp_path / "x.json"])
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("error: ")


def test_bad_population_spec(tmp_path, capsys):
    chain(tmp_path)
    code = run(["estimate", "--log", tmp_path / "log.jsonl",
                "--population", "sometimes", "--out", tmp_path / "x.json"])
    assert code == 1
    assert "population" in capsys.readouterr().err


def test_wrw_sampler_with_named_weights(tmp_path):
    chain(tmp_path)
    assert run(["sample", "--edges", tmp_path / "edges.tsv",
                "--categories", tmp_path / "cats.tsv",
                "--sampler", "wrw", "--n", "100", "--seed", "4",
                "--wrw-weights", "C0=5,C2=0.5",
                "--out", tmp_path / "wrw.jsonl"]) == 0
    lines = (tmp_path / "wrw.jsonl").read_text().splitlines()
    assert json.loads(lines[0])["sampler"] == "wrw"


def test_estimate_with_bootstrap_variances(tmp_path):
    chain(tmp_path)
    assert run(["estimate", "--log", tmp_path / "log.jsonl",
                "--size-est", "induced", "--bootstrap", "5", "--seed", "2",
                "--population", "auto",
                "--out", tmp_path / "est_var.json"]) == 0
    est = json.loads((tmp_path / "est_var.json").read_text())
    assert any("size_var" in c for c in est["categories"])
