import json
import os
import subprocess
import sys

exe = sys.argv[1]
failures = []


def run(*args, env=None):
    return subprocess.run([exe, *args], capture_output=True, text=True, env=env)


def expect(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f"  {detail}" if detail and not cond else ""))
    if not cond:
        failures.append(name)


# byte-identical stdout across worker counts
for args in (["certify", "--no-timing"], ["search", "--Lmax", "10"], ["corkscrew", "1..50"]):
    outs = [run("--workers", str(w), *args) for w in (1, 4)]
    expect(" ".join(args) + " identical across --workers 1/4",
           outs[0].returncode == outs[1].returncode and outs[0].stdout == outs[1].stdout and outs[0].stdout != "")
    again = run("--workers", "4", *args)
    expect(" ".join(args) + " identical on rerun", again.stdout == outs[1].stdout)

# exit codes
expect("corkscrew 0 is a usage error", run("corkscrew", "0").returncode == 2)
expect("unknown id is a usage error", run("certify", "--id", "no-such-claim").returncode == 2)
expect("bad word is a usage error", run("intersect", "abx").returncode == 2)
expect("peripheral word is a usage error", run("intersect", "aB").returncode == 2)
expect("bad numeric mode is a usage error", run("--numeric", "quad", "corkscrew", "1").returncode == 2)
expect("short search without a frontier file is a usage error",
       run("search", "--Lmax", "10", "--max-nodes", "5").returncode == 2)
expect("bound below the floor is a usage error", run("bound", "--L", "1").returncode == 2)

p = run("intersect", "ab")
expect("intersect ab exits 0", p.returncode == 0, p.stderr)
if p.returncode == 0:
    j = json.loads(p.stdout)
    expect("intersect ab has one double point", j["k"] == 1 and j["agree"] and j["stabilized"])

p = run("intersect", "abababbb", "--cutoff", "8")
expect("unstabilized count exits 1", p.returncode == 1, p.stdout)

p = run("--numeric", "exact", "intersect", "aabbab", "--surface", "pants:2,2,2")
expect("exact mode on pants exits 0", p.returncode == 0, p.stdout)
if p.returncode == 0:
    j = json.loads(p.stdout)
    expect("exact mode reported", j["numeric"]["mode"] == "exact" and j["k"] == 7)

env = dict(os.environ, HYPGEO_NUMERIC="exact")
p = run("intersect", "ab", env=env)
expect("HYPGEO_NUMERIC selects the mode", p.returncode == 0 and json.loads(p.stdout)["numeric"]["mode"] == "exact")

p = run("corkscrew", "1..3")
lines = p.stdout.strip().splitlines()
expect("corkscrew csv header", lines[0] == "k,trace,length_expr,length", lines[0] if lines else "")
expect("corkscrew csv rows", [l.split(",")[1] for l in lines[1:]] == ["6", "10", "14"], p.stdout)

p = run("corkscrew", "2")
expect("config line on stderr", p.stderr.startswith("config: {"), p.stderr)

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
