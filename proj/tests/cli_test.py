"""Exit codes and output lines of the numrad command-line tool."""
import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args, cwd=None):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, cwd=cwd)
    return proc.returncode, proc.stdout, proc.stderr


def check(name, cond, info=""):
    if not cond:
        failures.append(f"{name}: {info}")
    print(("ok   " if cond else "FAIL ") + name)


def tokens(line):
    head, *rest = line.split()
    return head, dict(kv.split("=", 1) for kv in rest)


def write(dirpath, name, rows, cols, entries):
    path = os.path.join(dirpath, name)
    with open(path, "w") as fh:
        json.dump({"rows": rows, "cols": cols, "data": [[float(re), float(im)] for re, im in entries]}, fh)
    return path


with tempfile.TemporaryDirectory() as tmp:
    shift = write(tmp, "shift.json", 2, 2, [(0, 0), (1, 0), (0, 0), (0, 0)])
    zero = write(tmp, "zero.json", 2, 2, [(0, 0)] * 4)
    eye = write(tmp, "eye.json", 2, 2, [(1, 0), (0, 0), (0, 0), (1, 0)])
    one = write(tmp, "one.json", 1, 1, [(1, 0)])
    z1 = write(tmp, "z1.json", 1, 1, [(0, 0)])
    two = write(tmp, "two.json", 1, 1, [(2, 0)])
    five = write(tmp, "five.json", 1, 1, [(5, 0)])
    rect = write(tmp, "rect.json", 2, 3, [(1, 0)] * 6)
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as fh:
        fh.write('{"rows": 2, "cols":')

    code, out, _ = run("omega", shift)
    head, kv = tokens(out.strip())
    check("omega shift", code == 0 and head == "omega" and abs(float(kv["lo"]) - 0.5) < 1e-8
          and abs(float(kv["hi"]) - 0.5) < 1e-8, out)
    code, out, _ = run("omega", zero)
    _, kv = tokens(out.strip())
    check("omega zero", code == 0 and float(kv["lo"]) == 0 and float(kv["hi"]) == 0, out)
    code, _, err = run("omega", bad)
    check("omega malformed -> 2", code == 2 and err, err)
    code, _, _ = run("omega", rect)
    check("omega rectangular -> 3", code == 3)
    code, _, _ = run("omega", os.path.join(tmp, "missing.json"))
    check("omega missing file -> 2", code == 2)

    code, out, _ = run("omega-p", shift)
    head, kv = tokens(out.splitlines()[0])
    check("omega-p single", code == 0 and head == "omega_p" and abs(float(kv["value"]) - 0.5) < 1e-6, out)
    code, out, _ = run("omega-p", eye, eye, "--p", "2")
    _, kv = tokens(out.splitlines()[0])
    check("omega-p identities", code == 0 and abs(float(kv["value"]) - 2 ** 0.5) < 1e-10
          and kv["converged"] in ("true", "false"), out)
    code, _, _ = run("omega-p", eye, one)
    check("omega-p mismatch -> 3", code == 3)

    code, out, _ = run("bound", "--id", "main1.v1", "--alpha", "0.5", "--r", "1", one, one)
    head, kv = tokens(out.splitlines()[0])
    check("bound main1", code == 0 and head == "bound" and abs(float(kv["value"]) - 1) < 1e-12
          and kv["ok"] == "true" and kv["exponent"] == "1", out)
    code, out, _ = run("bound", "--id", "main11.v1", "--constant-mode", "as_stated", "--p", "2", "--q", "2", one, one)
    _, kv = tokens(out.splitlines()[0])
    check("bound main11 as_stated", code == 0 and kv["ok"] == "false" and abs(float(kv["value"]) - 0.5) < 1e-12, out)
    code, out, _ = run("bound", "--id", "main11", "--variant", "1", one, one)
    _, kv = tokens(out.splitlines()[0])
    check("bound main11 default constant", code == 0 and kv["ok"] == "true" and kv["id"] == "main11.v1", out)
    code, out, _ = run("bound", "--id", "th1", "--p", "1", two, z1, z1, five)
    _, kv = tokens(out.splitlines()[0])
    check("bound th1 diagonal", code == 0 and abs(float(kv["value"]) - 5) < 1e-8, out)
    code, out, _ = run("bound", "--id", "main4.v1", one, one, one, one, one, one, one, one, one, one, one, one)
    _, kv = tokens(out.splitlines()[0])
    check("bound main4 two items", code == 0 and abs(float(kv["value"]) - 2) < 1e-12, out)
    code, _, _ = run("bound", "--id", "nope", one, one)
    check("bound unknown id -> 5", code == 5)
    code, _, _ = run("bound", "--id", "main1.v1", "--r", "0.5", one, one)
    check("bound bad r -> 3", code == 3)
    code, _, _ = run("bound", "--id", "main11.v1", "--p", "2", "--q", "3", one, one)
    check("bound bad Hoelder pair -> 3", code == 3)
    code, _, _ = run("bound", "--id", "main1.v1", one, eye)
    check("bound shape mismatch -> 3", code == 3)
    code, _, _ = run("bound", "--id", "main1.v1", "--frobnicate", one, one)
    check("bound bad flag -> 2", code == 2)

    cfg = os.path.join(tmp, "cfg.json")
    with open(cfg, "w") as fh:
        json.dump({"bound_ids": ["main1.v1", "main11.v1"], "trials": 3, "dims": [[1, 1], [2, 2]],
                   "include_as_stated": True, "seed": 5}, fh)
    out_dir = os.path.join(tmp, "reports")
    code, out, _ = run("verify", "--config", cfg, "--out", out_dir)
    check("verify exit 0", code == 0, out)
    check("verify expected section", "# expected discrepancy" in out and "expected_violation" in out, out)
    with open(os.path.join(out_dir, "numrad-report.csv")) as fh:
        header = fh.readline().strip()
    check("verify csv header", header == "trial,bound_id,m,n,r,alpha,p,q,value,omega_lo,omega_hi,ratio,violation,seed_path")
    with open(os.path.join(out_dir, "numrad-report.json")) as fh:
        report = json.load(fh)
    check("verify json", report["format_version"] == "numrad-report/1" and report["unexpected_violations"] == 0
          and len(report["expected_discrepancy"]) == 1)
    first = open(os.path.join(out_dir, "numrad-report.json")).read()
    code, _, _ = run("verify", "--config", cfg, "--out", out_dir, "--jobs", "3")
    check("verify deterministic across jobs", code == 0 and open(os.path.join(out_dir, "numrad-report.json")).read() == first)

    badcfg = os.path.join(tmp, "badcfg.json")
    with open(badcfg, "w") as fh:
        fh.write('{"trials": "many"}')
    code, _, _ = run("verify", "--config", badcfg, "--out", out_dir)
    check("verify bad config -> 2", code == 2)
    with open(badcfg, "w") as fh:
        json.dump({"r_values": [0.5]}, fh)
    code, _, _ = run("verify", "--config", badcfg, "--out", out_dir)
    check("verify bad sweep -> 3", code == 3)

    code, out, _ = run("counterexamples", "--trials", "50")
    check("counterexamples exit 0", code == 0)
    lines = out.splitlines()
    case_a = [tokens(l)[1] for l in lines if l.startswith("case_a ")]
    case_c = [tokens(l)[1] for l in lines if l.startswith("case_c ")]
    check("counterexamples case a", case_a and case_a[0]["violation"] == "true", out)
    check("counterexamples case c", case_c and case_c[0]["violation"] == "false", out)
    check("counterexamples case b", any(l.startswith("case_b ") for l in lines), out)
    _, again, _ = run("counterexamples", "--trials", "50")
    check("counterexamples repeatable", again == out)

    sampled = os.path.join(tmp, "u.json")
    code, _, _ = run("sample", "unitary", "3", "3", "--seed", "4", "--out", sampled)
    code2, out, _ = run("omega", sampled)
    check("sample then omega", code == 0 and code2 == 0 and out.startswith("omega lo="))
    code, _, _ = run("sample", "unitary", "2", "3")
    check("sample bad shape -> 3", code == 3)

if failures:
    print("\n".join(failures))
    sys.exit(1)
