import json

import pytest

from convdiff1d.harness import (
    OUTPUT_FIELDS,
    ExperimentConfig,
    dump_solution,
    format_table,
    reproduce_table,
    rows_to_csv,
    rows_to_json,
    run_experiment,
    table_rows,
)


def test_config_validation():
    cfg = ExperimentConfig("ex3-robin", methods=("fem", "df"), n_ladder=(10, 20))
    assert cfg.problem == "ex3_robin"
    assert cfg.methods == ("fd", "fem")
    for bad in (
        dict(n_ladder=(20, 10)),
        dict(n_ladder=()),
        dict(n_ladder=(1, 4)),
        dict(methods=()),
        dict(norms=("h1",)),
        dict(fmt="xml"),
    ):
        with pytest.raises(ValueError):
            ExperimentConfig("ex1", **bad)


def test_rows_ordered_and_warmup_hidden():
    rows = run_experiment(ExperimentConfig("ex1", methods=("fem", "mim", "fd"), n_ladder=(40, 80)))
    assert [(r.method, r.n) for r in rows] == [
        ("fd", 40), ("fd", 80), ("mim", 40), ("mim", 80), ("fem", 40), ("fem", 80)
    ]
    assert all(r.order_max is not None for r in rows)


def test_warmup_rows_have_no_order():
    rows = run_experiment(ExperimentConfig("ex1", methods=("fd",), n_ladder=(40, 80)), include_warmup=True)
    assert [r.n for r in rows] == [20, 40, 80]
    assert rows[0].warmup and rows[0].order_max is None and rows[0].order_l2 is None


def test_single_n_gets_order_from_warmup():
    rows = run_experiment(ExperimentConfig("ex1", n_ladder=(1000,)))
    assert len(rows) == 3
    mim = [r for r in rows if r.method == "mim"][0]
    assert mim.order_max == pytest.approx(2.0168, abs=0.05)


def test_fem_5pt_superconvergence_row():
    [row] = run_experiment(ExperimentConfig("ex1", methods=("fem",), n_ladder=(100,), quad_order=5))
    assert row.err_max <= 1e-9


def test_norm_selection_and_cond():
    [row] = run_experiment(
        ExperimentConfig("ex3_robin", methods=("fd",), n_ladder=(50,), norms=("max",), cond=True)
    )
    assert row.err_l2 is None and row.err_max > 0
    assert row.cond_estimate > 1


def test_threads_match_serial():
    cfg = dict(problem="ex2", n_ladder=(50, 100, 200))
    a = rows_to_csv(run_experiment(ExperimentConfig(**cfg)))
    b = rows_to_csv(run_experiment(ExperimentConfig(**cfg, n_jobs=4)))
    assert a == b


def test_csv_byte_identical(tmp_path):
    cfg = ExperimentConfig("ex3_dirichlet", n_ladder=(50, 100), out=str(tmp_path / "a.csv"))
    run_experiment(cfg)
    from convdiff1d.harness import write_rows

    write_rows(run_experiment(cfg), "csv", tmp_path / "a.csv")
    write_rows(run_experiment(cfg), "csv", tmp_path / "b.csv")
    a, b = (tmp_path / "a.csv").read_bytes(), (tmp_path / "b.csv").read_bytes()
    assert a == b
    assert b"\r" not in a
    lines = a.decode().splitlines()
    assert lines[0] == ",".join(OUTPUT_FIELDS)
    assert len(lines) == 7


def test_float_format_round_trips():
    rows = run_experiment(ExperimentConfig("ex1", methods=("fd",), n_ladder=(10,)))
    text = rows_to_csv(rows)
    field = text.splitlines()[1].split(",")[OUTPUT_FIELDS.index("err_max")]
    assert float(field) == rows[0].err_max


def test_json_mirrors_csv():
    rows = run_experiment(ExperimentConfig("ex1", methods=("mim",), n_ladder=(10, 20)))
    data = json.loads(rows_to_json(rows))
    assert [list(d) for d in data] == [OUTPUT_FIELDS] * 2
    assert data[1]["n"] == 20 and data[1]["err_max"] == rows[1].err_max


def test_dump_solutions(tmp_path):
    out = tmp_path / "conv.csv"
    run_experiment(ExperimentConfig("ex1", methods=("mim",), n_ladder=(20,), out=str(out), dump_solutions=True))
    text = (tmp_path / "conv_mim_20.csv").read_text()
    assert len(text.splitlines()) == 23
    assert not (tmp_path / "conv_mim_10.csv").exists()


def test_dump_solution_rows():
    text = dump_solution("ex1", "mim", 20)
    lines = text.splitlines()
    assert lines[0] == "x,value,exact" and len(lines) == 23
    fem = dump_solution("ex2", "fem", 60).splitlines()
    assert len(fem) == 62


def test_dump_solution_oscillating_fd_profile():
    lines = dump_solution("ex3_dirichlet", "fd", 50).splitlines()[1:]
    values = [float(l.split(",")[1]) for l in lines]
    diffs = [b - a for a, b in zip(values[-8:], values[-7:])]
    assert any(d < 0 for d in diffs) and any(d > 0 for d in diffs)


def test_dump_solution_io_error(tmp_path):
    with pytest.raises(OSError, match="cannot write"):
        dump_solution("ex1", "fd", 4, tmp_path / "missing" / "x.csv")


def test_table_3_shape():
    rows = table_rows(3)
    text = format_table(rows)
    lines = text.splitlines()
    assert lines[0] == "N,DF_max,MIM_max,MEF_max,DF_L2,MIM_L2,MEF_L2"
    assert [int(l.split(",")[0]) for l in lines[1:]] == [1000, 2000, 4000, 5000]
    first = [float(v) for v in lines[1].split(",")[1:]]
    assert first[0] == pytest.approx(2.005, abs=0.05)
    assert first[2] == pytest.approx(2.005, abs=0.05)
    assert first[1] == pytest.approx(1.079, abs=0.1)


def test_unknown_table():
    with pytest.raises(ValueError):
        reproduce_table(4)
