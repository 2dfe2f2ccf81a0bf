"""Runs every CLI verb on small inputs and validates the JSON against schemas/."""
import json
import os
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli = pathlib.Path(sys.argv[1])
schemas = pathlib.Path(sys.argv[2])
failures = []


def schema(name):
    return json.loads((schemas / f"{name}.schema.json").read_text())


def run(args, expect=0, env=None, stdin=None):
    proc = subprocess.run([str(cli), *args], capture_output=True, text=True, env=env, input=stdin)
    if proc.returncode != expect:
        failures.append(f"{' '.join(args)}: exit {proc.returncode}, wanted {expect}\n{proc.stderr}")
    return proc.stdout


def check(name, doc, label):
    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as e:
        failures.append(f"{label}: {e.message}")


def expect(cond, label):
    if not cond:
        failures.append(label)


with tempfile.TemporaryDirectory() as tmp:
    db = pathlib.Path(tmp) / "db"
    out = json.loads(run(["census", "--genus", "4", "--db", str(db), "--provenance", "-q"]))
    check("census", out, "census")
    expect(out["troplanar_count"] == 13, "census genus 4 count")
    out5 = json.loads(run(["census", "--genus", "5", "-q"]))
    check("census", out5, "census 5")
    expect(out5["troplanar_count"] == 38, "census genus 5 count")

    gdir = db / "genus-4"
    for line in (gdir / "events.ndjson").read_text().splitlines():
        check("event", json.loads(line), "event line")
    head = (gdir / "HEAD").read_text().strip()
    snap = json.loads((gdir / "snapshots" / f"{head}.json").read_text())
    check("snapshot", snap, "snapshot")

    env_db = pathlib.Path(tmp) / "env-db"
    env = dict(os.environ, TROPLANAR_DB=str(env_db))
    run(["census", "--genus", "3", "--db", str(pathlib.Path(tmp) / "ignored"), "-q"], env=env)
    expect((env_db / "genus-3" / "HEAD").exists(), "TROPLANAR_DB overrides --db")
    expect(not (pathlib.Path(tmp) / "ignored").exists(), "--db ignored when TROPLANAR_DB is set")

    cfg_db = pathlib.Path(tmp) / "cfg-db"
    cfg = pathlib.Path(tmp) / "troplanar.toml"
    cfg.write_text(f'[census]\nthreads = 2\ndb = "{cfg_db}"\n')
    run(["--config", str(cfg), "census", "--genus", "2", "-q"])
    expect((cfg_db / "genus-2" / "HEAD").exists(), "--config supplies census defaults")

    check("breakdown", json.loads(run(["breakdown", "--genus", "4", "--db", str(db), "-q"])), "breakdown")
    check("stratify", json.loads(run(["stratify", "--genus", "4", "--db", str(db), "-q"])), "stratify")
    check("bounds", json.loads(run(["bounds", "--genus", "4", "--db", str(db), "-q"])), "bounds")
    check("polygons", json.loads(run(["polygons", "--genus", "6"])), "polygons")
    check("triangulate", json.loads(run(["triangulate", "--polygon", "0,0 3,0 0,3", "--list"])), "triangulate")
    lines = run(["classify", "--db", str(db)], stdin="2 3 : 0-1 0-1 0-1\n6 9 : 0-1 1-2 0-2 0-3 1-4 2-5 3-3 4-4 5-5\nnot a graph\n",
                expect=1)
    for line in lines.splitlines():
        check("classify", json.loads(line), "classify line")
    for g in ("2", "4"):
        tiles = json.loads(run(["tiles", "--genus", g]))
        check("tiles", tiles, f"tiles {g}")
    expect(json.loads(run(["tiles", "--genus", "4"]))["count"] == 13, "tiles genus 4 count")
    lb = json.loads(run(["lower-bound", "--genus", "7", "--db", str(db)]))
    check("lower-bound", lb, "lower-bound")
    check("verify-tiling", json.loads(run(["verify-tiling", "--n", "2"])), "verify-tiling")

    dot1 = run(["export-dot", "--graph", "2 3 : 0-1 0-1 0-1"])
    dot2 = run(["export-dot", "--graph", "2 3 : 0-1 0-1 0-1"])
    expect(dot1 == dot2 and dot1.count("0 -- 1") == 3, "theta DOT")
    dumbbell = run(["export-dot", "--graph", "2 3 : 0-0 0-1 1-1"])
    expect(dumbbell.count("0 -- 0") == 1 and dumbbell.count("1 -- 1") == 1 and dumbbell.count("0 -- 1") == 1, "dumbbell DOT")

    run(["census", "--genus", "9"], expect=2)
    run(["census", "--genus", "7"], expect=2)
    run(["frobnicate"], expect=64)
    run([], expect=64)
    run(["census"], expect=64)

if failures:
    print("\n".join(failures))
    sys.exit(1)
print("all CLI outputs valid")
