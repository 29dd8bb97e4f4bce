#!/usr/bin/env python3
"""End-to-end tests for the fairgate command line tool.

Usage: cli_test.py FAIRGATE_BINARY REPO_ROOT [--update]
"""

import csv
import itertools
import json
import os
import subprocess
import sys
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import jsonschema
import networkx as nx
from referencing import Registry, Resource

BINARY = None
ROOT = None
UPDATE = False

BETA = "β"


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("FAIRGATE_FACT_BUDGET", None)
    if env:
        full_env.update(env)
    return subprocess.run([BINARY, *args], cwd=ROOT, capture_output=True, env=full_env)


def data(name):
    return str(ROOT / "data" / name)


GOLDEN = {
    "paths_loan.json": (0, ["paths", "--graph", "data/loan.cg"]),
    "weaken_admissible.json": (0, ["weaken", "--graph", "data/loan.cg", "--judgment", "data/loan.jdg",
                                   "--attr", "MS=m"]),
    "weaken_fork.json": (1, ["weaken", "--graph", "data/loan.cg", "--judgment", "data/loan_gai.jdg",
                             "--attr", "MS=m"]),
    "weaken_fork.txt": (1, ["weaken", "--graph", "data/loan.cg", "--judgment", "data/loan_gai.jdg",
                            "--attr", "MS=m", "--format", "text"]),
    "if_table1_marginal.json": (0, ["if", "--dataset", "data/table1.csv", "--target", "t", "--protected", "a1"]),
    "if_table1_both.json": (1, ["if", "--graph", "data/table1.cg", "--dataset", "data/table1.csv",
                                "--target", "t", "--protected", "a1", "--context", "a2=v21", "--mode", "both"]),
    "if_table1_agreement.json": (1, ["if", "--graph", "data/table1.cg", "--dataset", "data/table1.csv",
                                     "--target", "t", "--protected", "a1", "--mode", "both"]),
    "if_loan_graphical.json": (0, ["if", "--graph", "data/loan.cg", "--target", "Loan", "--protected", "MS",
                                   "--ctx", "data/loan.ctx"]),
    "intersect_table1.json": (1, ["intersect", "--dataset", "data/table1.csv", "--target", "t",
                                  "--protected", "a1,a2"]),
    "intersect_loan.json": (1, ["intersect", "--graph", "data/loan.cg", "--target", "Loan",
                                "--protected", "MS,GAI", "--context", "Age=27"]),
    "oracle_small.json": (0, ["oracle", "--exhaustive", "4", "--trials", "20", "--max-nodes", "6",
                              "--seed", "7"]),
    "demo_table1.json": (1, ["demo-table1"]),
    "demo_table1.txt": (1, ["demo-table1", "--format", "text"]),
}

SCHEMA_OF = {
    "paths": "paths.schema.json",
    "weaken": "weaken.schema.json",
    "if": "if.schema.json",
    "intersect": "intersect.schema.json",
    "oracle": "oracle.schema.json",
    "demo-table1": "demo-table1.schema.json",
}


def load_graph(path):
    g = nx.DiGraph()
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("node "):
            g.add_node(line[5:].strip())
        else:
            cause, effect = (s.strip() for s in line.split("->"))
            g.add_edge(cause, effect)
    return g


def load_table1():
    with open(data("table1.csv"), newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def prob(rows, **where):
    hits = [r for r in rows if all(r[k] == v for k, v in where.items())]
    return Fraction(sum(r["t"] == BETA for r in hits), len(hits))


def frac(text):
    return Fraction(text)


def max_marginal_delta(rows, attribute, **where):
    base = [r for r in rows if all(r[k] == v for k, v in where.items())]
    betas = sorted({r["t"] for r in rows})
    best = Fraction(0)
    for alpha in sorted({r[attribute] for r in base}):
        for beta in betas:
            sub = [r for r in base if r[attribute] == alpha]
            p = Fraction(sum(r["t"] == beta for r in sub), len(sub))
            q = Fraction(sum(r["t"] == beta for r in base), len(base))
            best = max(best, abs(p - q))
    return best


def admissible(g, attribute, target, context):
    if g.has_edge(attribute, target) or g.has_edge(target, attribute):
        return False
    return nx.is_d_separator(g, {attribute}, {target}, set(context))


def dag_classes(n):
    """Representatives of DAG isomorphism classes on n labelled nodes."""
    pairs = list(itertools.combinations(range(n), 2))
    reps = []
    for mask in range(1 << len(pairs)):
        for orient in range(1 << bin(mask).count("1")):
            g = nx.DiGraph()
            g.add_nodes_from(range(n))
            k = 0
            for i, (a, b) in enumerate(pairs):
                if mask >> i & 1:
                    g.add_edge(*((a, b) if orient >> k & 1 else (b, a)))
                    k += 1
            if not nx.is_directed_acyclic_graph(g):
                continue
            if not any(nx.is_isomorphic(g, r) for r in reps if r.number_of_edges() == g.number_of_edges()):
                reps.append(g)
    return reps


class Golden(unittest.TestCase):
    def test_goldens(self):
        golden_dir = ROOT / "tests" / "golden"
        for name, (code, args) in GOLDEN.items():
            with self.subTest(golden=name):
                first = run(*args)
                second = run(*args)
                self.assertEqual(first.returncode, code, first.stderr.decode())
                self.assertEqual(first.stdout, second.stdout, "output is not deterministic")
                path = golden_dir / name
                if UPDATE:
                    golden_dir.mkdir(exist_ok=True)
                    path.write_bytes(first.stdout)
                self.assertEqual(first.stdout, path.read_bytes())

    def test_schemas(self):
        schema_dir = ROOT / "schemas"
        resources = []
        for p in schema_dir.glob("*.schema.json"):
            doc = json.loads(p.read_text())
            resources.append((doc["$id"], Resource.from_contents(doc)))
        registry = Registry().with_resources(resources)
        base = "https://fairgate.example/schemas/"
        for name, (_, args) in GOLDEN.items():
            if not name.endswith(".json"):
                continue
            with self.subTest(golden=name):
                out = json.loads(run(*args).stdout)
                schema = registry.contents(base + SCHEMA_OF[out["command"]])
                jsonschema.Draft202012Validator(schema, registry=registry).validate(out)


class Values(unittest.TestCase):
    def test_table1_cells_and_marginals(self):
        rows = load_table1()
        self.assertEqual(len(rows), 680)
        out = json.loads(run("demo-table1").stdout)
        self.assertEqual(out["rows"], 680)
        for cell in out["cells"]:
            p = prob(rows, a1=cell["a1"], a2=cell["a2"])
            self.assertEqual(frac(cell["probability"]), p)
            self.assertEqual(frac(cell["expected"]), p)
        self.assertEqual(sorted(frac(c["probability"]) for c in out["cells"]),
                         [Fraction(3, 4), Fraction(3, 4), Fraction(9, 10), Fraction(9, 10)])
        for m in out["marginals"]:
            self.assertEqual(frac(m["probability"]), prob(rows, **{m["attribute"]: m["value"]}))
            self.assertEqual(frac(m["probability"]), Fraction(27, 34))
        self.assertTrue(out["reproduced"])
        self.assertFalse(out["pass"])

    def test_intersectionality_deltas(self):
        rows = load_table1()
        out = json.loads(run("intersect", "--dataset", data("table1.csv"), "--target", "t",
                             "--protected", "a1,a2").stdout)
        by_subset = {tuple(s["subset"]): s for s in out["subsets"]}
        self.assertEqual(list(by_subset), [("a1",), ("a2",), ("a1", "a2")])
        self.assertTrue(by_subset[("a1",)]["pass"])
        self.assertTrue(by_subset[("a2",)]["pass"])
        self.assertFalse(by_subset[("a1", "a2")]["pass"])
        for entry in by_subset[("a1", "a2")]["entries"]:
            other = entry["merged"][0]
            for check in entry["empirical"]["checks"]:
                value = check["conditioning"].split("=")[1]
                want = max_marginal_delta(rows, entry["attribute"], **{other: value})
                self.assertEqual(frac(check["maxDelta"]), want)
        self.assertEqual(frac(out["maxDelta"]), Fraction(9, 85))

    def test_modes_disagree_on_table1(self):
        out = json.loads(run(*GOLDEN["if_table1_agreement.json"][1]).stdout)["result"]
        self.assertTrue(out["empirical"]["pass"])
        self.assertFalse(out["graphical"]["pass"])
        self.assertEqual(out["graphical"]["verdict"]["failedCondition"], "Condition1")
        self.assertIs(out["agreement"], False)

    def test_weaken_verdicts_match_d_separation(self):
        g = load_graph(data("loan.cg"))
        for judgment, context in (("loan.jdg", ["Age", "GAI"]), ("loan_gai.jdg", ["GAI"])):
            out = json.loads(run("weaken", "--graph", data("loan.cg"), "--judgment", data(judgment),
                                 "--attr", "MS=m").stdout)
            self.assertEqual(out["verdict"]["context"], context)
            self.assertEqual(out["verdict"]["admissible"], admissible(g, "MS", "Loan", context))
        fork = json.loads(run(*GOLDEN["weaken_fork.json"][1]).stdout)
        self.assertEqual(fork["verdict"]["witness"]["path"], ["MS", "Age", "Loan"])
        self.assertIsNone(fork["conclusion"])

    def test_path_facts_are_certified(self):
        g = load_graph(data("loan.cg"))
        out = json.loads(run("paths", "--graph", data("loan.cg")).stdout)
        skeleton = g.to_undirected()
        for fact in out["paths"]:
            path = fact["path"]
            self.assertEqual({path[0], path[-1]}, {fact["left"], fact["right"]})
            self.assertEqual(len(set(path)), len(path))
            for a, b in zip(path, path[1:]):
                self.assertTrue(skeleton.has_edge(a, b))
            colliders = [m for p, m, n in zip(path, path[1:], path[2:]) if g.has_edge(p, m) and g.has_edge(n, m)]
            noncolliders = [m for m in path[1:-1] if m not in colliders]
            self.assertEqual(sorted(fact["M"]), sorted(noncolliders))
            self.assertEqual(len(fact["N"]), len(colliders))
            for group in fact["N"]:
                head = [c for c in colliders if c in group]
                self.assertEqual(len(head), 1)
                self.assertTrue(set(group) <= {head[0]} | nx.descendants(g, head[0]))
        pairs = {frozenset((f["left"], f["right"])) for f in out["paths"]}
        want = {frozenset((a, b)) for a, b in itertools.combinations(g.nodes, 2)
                if any(len(p) > 2 for p in nx.all_simple_paths(skeleton, a, b))}
        self.assertEqual(pairs, want)

    def test_oracle_counts(self):
        out = json.loads(run(*GOLDEN["oracle_small.json"][1]).stdout)
        classes = [dag_classes(n) for n in range(1, 5)]
        self.assertEqual([len(c) for c in classes], [1, 2, 6, 31])
        self.assertEqual(out["exhaustiveGraphs"], sum(len(c) for c in classes))
        self.assertEqual(out["randomGraphs"], 20)
        self.assertEqual(out["discrepancies"], [])
        self.assertTrue(out["pass"])

    def test_threads_do_not_change_output(self):
        args = ["oracle", "--exhaustive", "4", "--trials", "30", "--seed", "3"]
        one = run(*args, "--threads", "1")
        four = run(*args, "--threads", "4")
        self.assertEqual(one.returncode, 0)
        self.assertEqual(one.stdout, four.stdout)


class ExitCodes(unittest.TestCase):
    def assertExit(self, code, *args, env=None, stderr=None):
        r = run(*args, env=env)
        self.assertEqual(r.returncode, code, (args, r.stderr.decode()))
        if stderr is not None:
            self.assertIn(stderr, r.stderr.decode())
        return r

    def test_help_and_version(self):
        self.assertExit(0, "--help")
        self.assertIn(b"0.1.0", self.assertExit(0, "--version").stdout)
        self.assertExit(2)
        self.assertExit(2, "bogus")

    def test_input_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            cyclic = Path(tmp) / "cyclic.cg"
            cyclic.write_text("A -> B\nB -> A\n")
            bad = Path(tmp) / "bad.jdg"
            bad.write_text("Age=27 Loan=yes @ 0.6\n")
            self.assertExit(2, "paths", "--graph", str(cyclic), stderr="CycleDetected")
            self.assertExit(2, "weaken", "--graph", data("loan.cg"), "--judgment", str(bad), "--attr", "MS=m",
                            stderr="SyntaxError")
        self.assertExit(2, "paths", "--graph", "missing.cg")
        self.assertExit(2, "weaken", "--graph", data("loan.cg"), "--judgment", data("loan.jdg"))
        self.assertExit(2, "weaken", "--graph", data("loan.cg"), "--judgment", data("loan.jdg"), "--attr", "Zip=1",
                        stderr="UnknownVariable")
        self.assertExit(2, "weaken", "--graph", data("loan.cg"), "--judgment", data("loan.jdg"), "--attr", "Age=3",
                        stderr="VariableAlreadyInContext")
        self.assertExit(2, "if", "--dataset", data("table1.csv"), "--target", "t", "--protected", "t",
                        stderr="WeakeningTargetIsGoal")
        self.assertExit(2, "if", "--dataset", data("table1.csv"), "--target", "t", "--protected", "a1",
                        "--epsilon", "-1/2")
        self.assertExit(2, "if", "--graph", data("loan.cg"), "--target", "Loan", "--protected", "MS",
                        "--context", "Age=27", "--ctx", data("loan.ctx"))
        self.assertExit(2, "if", "--dataset", data("table1.csv"), "--target", "t", "--protected", "a1",
                        "--mode", "graphical", stderr="--graph")
        self.assertExit(2, "if", "--dataset", data("table1.csv"), "--target", "t", "--protected", "a1",
                        "--context", "a2=v99", stderr="EmptyConditioningSet")
        self.assertExit(2, "intersect", "--dataset", data("table1.csv"), "--target", "t",
                        "--protected", "a1,a1", stderr="DuplicateVariable")

    def test_resource_limits(self):
        args = ["paths", "--graph", data("loan.cg")]
        self.assertExit(3, *args, "--fact-budget", "3", stderr="ResourceLimit")
        self.assertExit(3, *args, env={"FAIRGATE_FACT_BUDGET": "3"}, stderr="ResourceLimit")
        self.assertExit(0, *args, "--fact-budget", "100", env={"FAIRGATE_FACT_BUDGET": "3"})
        self.assertExit(0, *args, env={"FAIRGATE_FACT_BUDGET": "100"})
        self.assertExit(2, *args, env={"FAIRGATE_FACT_BUDGET": "lots"})
        self.assertExit(2, "oracle", "--exhaustive", "7", "--max-nodes", "8", stderr="not in range")
        with tempfile.TemporaryDirectory() as tmp:
            wide = Path(tmp) / "wide.cg"
            names = [f"P{i:02d}" for i in range(13)]
            wide.write_text("".join(f"{n} -> T\n" for n in names))
            self.assertExit(3, "intersect", "--graph", str(wide), "--target", "T", "--protected", ",".join(names),
                            stderr="SubsetExplosion")
            big = Path(tmp) / "big.cg"
            big.write_text("".join(f"N{i:02d} -> N{i + 1:02d}\n" for i in range(64)))
            self.assertExit(3, "paths", "--graph", str(big), stderr="ResourceLimit")

    def test_pass_fail_codes(self):
        self.assertExit(0, "weaken", "--graph", data("loan.cg"), "--judgment", data("loan.jdg"), "--attr", "MS=m")
        self.assertExit(1, "weaken", "--graph", data("loan.cg"), "--judgment", data("loan_gai.jdg"),
                        "--attr", "MS=m")
        self.assertExit(0, "if", "--dataset", data("table1.csv"), "--target", "t", "--protected", "a2",
                        "--context", "a1=v11", "--epsilon", "3/20")
        self.assertExit(1, "if", "--dataset", data("table1.csv"), "--target", "t", "--protected", "a2",
                        "--context", "a1=v11", "--epsilon", "0.1")


def main():
    global BINARY, ROOT, UPDATE
    args = sys.argv[1:]
    if "--update" in args:
        UPDATE = True
        args.remove("--update")
    BINARY = str(Path(args[0]).resolve())
    ROOT = Path(args[1]).resolve()
    unittest.main(argv=[sys.argv[0], "-v"])


if __name__ == "__main__":
    main()
