"""Command line front end.

    afaset solve FILE [--show-canonical]
    afaset check-eq FILE:VAR FILE:VAR
    afaset sat FILE:VAR 'and(dia(top), box(dia(top)))'
    afaset classify REGISTRY.json
    afaset repl

FILE may be an equation file, a JSON system, or `@name` for a bundled
fixture (`@omega`, `@escher`, `@citations`, `@naturals`,
`@strong_registry`, `@weak_registry`).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources

from . import bisim, events, hyperset, modal
from .equations import equations_to_system, parse_equations
from .errors import AfaError, NoRoot, ParseError
from .randsys import random_system
from .system import export_dot, from_dict, render_equations

FIXTURES = ("omega", "escher", "citations", "naturals", "strong_registry", "weak_registry")


class UsageError(Exception):
    pass


def fixture_path(name):
    base = resources.files("afaset") / "fixtures"
    for ext in (".hs", ".json"):
        candidate = base / (name + ext)
        if candidate.is_file():
            return str(candidate)
    raise UsageError(f"no bundled fixture named {name!r} (have: {', '.join(FIXTURES)})")


def split_ref(ref):
    """'file:var' -> (path, var); 'file' -> (path, None)."""
    path, sep, var = ref.rpartition(":")
    if not sep or not path or os.path.exists(ref):
        path, var = ref, None
    if path.startswith("@"):
        path = fixture_path(path[1:])
    return path, var or None


def read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_system(ref):
    """The picture named by FILE[:VAR], pointed at VAR or at the file's root."""
    path, var = split_ref(ref)
    text = read_text(path)
    if path.endswith(".json"):
        try:
            sys_ = from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        return sys_.rerooted(var) if var else sys_
    eqs = parse_equations(text)
    eqs.check_declared()
    root = var or eqs.root
    if root is None:
        raise NoRoot()
    if root not in eqs.members:
        raise UsageError(f"{path} declares no variable {root!r}")
    return equations_to_system(eqs, root)


def load_set(ref):
    return hyperset.decorate(load_system(ref))


def set_json(a):
    return {
        "value": hyperset.format_set(a),
        "wellfounded": hyperset.is_wellfounded(a),
        "canonical": a.picture.to_dict(),
    }


def _emit(out, args, human, machine):
    if args.json:
        out.write(json.dumps(machine, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(human if human.endswith("\n") else human + "\n")


def _indent(text, pad="    "):
    return "".join(pad + line + "\n" for line in text.splitlines())


# -- verbs ----------------------------------------------------------------------


def cmd_solve(args, out):
    path, _ = split_ref(args.file)
    solved = hyperset.solve_equations(read_text(path))
    lines = []
    for name, a in solved.items():
        lines.append(f"{name} = {hyperset.format_set(a)}")
        if args.show_canonical:
            lines.append(_indent(render_equations(a.picture)).rstrip("\n"))
    _emit(out, args, "\n".join(lines), {name: set_json(a) for name, a in solved.items()})


def cmd_check_eq(args, out):
    same = hyperset.equals(load_set(args.left), load_set(args.right))
    _emit(out, args, "equal" if same else "not equal", {"equal": same})


def cmd_wf(args, out):
    wf = hyperset.is_wellfounded(load_set(args.ref))
    _emit(out, args, "wellfounded" if wf else "non-wellfounded", {"wellfounded": wf})


def cmd_minimize(args, out):
    s = load_system(args.ref)
    c = bisim.canonicalize(s)
    head = f"# {len(s)} nodes, {s.num_edges} edges -> {len(c)} nodes, {c.num_edges} edges\n"
    _emit(out, args, head + render_equations(c), {"input_nodes": len(s), "input_edges": s.num_edges, "canonical": c.to_dict()})


def cmd_unfold(args, out):
    a = hyperset.unfold(load_set(args.ref), args.rank)
    _emit(out, args, hyperset.format_set(a), {"rank": args.rank, **set_json(a)})


def cmd_sat(args, out):
    ok = modal.satisfies(load_set(args.ref), modal.parse_formula(args.formula))
    _emit(out, args, "true" if ok else "false", {"satisfied": ok})


def cmd_char(args, out):
    f = modal.char_formula(load_set(args.ref), args.rank, args.budget)
    _emit(out, args, modal.format_formula(f, args.budget), {"rank": args.rank, "formula": modal.format_formula(f, args.budget), "size": modal.size(f)})


def cmd_modal_eq(args, out):
    eq = modal.modally_equivalent(load_set(args.left), load_set(args.right), args.rank, args.budget)
    _emit(out, args, "equivalent" if eq else "not equivalent", {"rank": args.rank, "equivalent": eq})


def cmd_classify(args, out):
    path, _ = split_ref(args.registry)
    try:
        data = json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    reg = events.registry_from_dict(data)
    _emit(out, args, events.report_text(reg), events.report(reg))


def cmd_export_dot(args, out):
    s = load_system(args.ref)
    if args.show_canonical:
        s = bisim.canonicalize(s)
    _emit(out, args, export_dot(s), {"dot": export_dot(s)})


def cmd_bench(args, out):
    s = random_system(args.nodes, args.density, args.seed)
    t0 = time.perf_counter()
    q = bisim.quotient(s)
    ms = (time.perf_counter() - t0) * 1000.0
    minimal = len(bisim.quotient(q)) == len(q)
    row = {"nodes": len(s), "edges": s.num_edges, "refine_ms": round(ms, 1), "quotient_nodes": len(q), "minimal": minimal}
    table = (
        f"{'nodes':>10} {'edges':>10} {'refine_ms':>10} {'quotient':>10} {'minimal':>8}\n"
        f"{row['nodes']:>10} {row['edges']:>10} {row['refine_ms']:>10.1f} {row['quotient_nodes']:>10} {str(minimal).lower():>8}"
    )
    _emit(out, args, table, row)


def cmd_repl(args, out):
    Repl(budget=args.budget).loop(sys.stdin, out)
    return 0


# -- interactive session ----------------------------------------------------------


REPL_HELP = """\
  x = {y, z}; y = {x}     bind variables (earlier bindings may be referenced)
  show X                  value and canonical picture
  eq X Y                  extensional equality
  wf X                    wellfoundedness
  members X               elements, in canonical order
  unfold X K              rank-K unfolding (result bound to _)
  sat X FORMULA           e.g. sat x and(dia(top), box(dia(top)))
  char X K                characteristic formula of rank K
  modal-eq X Y K          agreement on rank-K characteristic formulas
  classify [X ...]        event kinds; with no names, the whole session as a universe
  vars | help | quit"""


class Repl:
    def __init__(self, budget=modal.DEFAULT_BUDGET):
        self.env = {}
        self.budget = budget

    def get(self, name):
        try:
            return self.env[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r}") from None

    def execute(self, line):
        """Run one line and return its output text; errors come back as 'error: ...'."""
        line = line.split("#", 1)[0].strip()
        if not line:
            return ""
        try:
            return self._execute(line)
        except (AfaError, UsageError, ValueError) as exc:
            return f"error: {exc}"

    def _execute(self, line):
        words = line.split(None, 1)
        verb = words[0]
        rest = words[1] if len(words) > 1 else ""
        if "=" in line:
            eqs = parse_equations(line, allow_root=False)
            solved = hyperset.solve_parsed(eqs, self.env)
            self.env.update(solved)
            return "\n".join(f"{n} = {hyperset.format_set(a)}" for n, a in solved.items())
        argv = rest.split()
        if verb in ("quit", "exit"):
            raise EOFError
        if verb == "help":
            return REPL_HELP
        if verb == "vars":
            return "\n".join(f"{n} = {hyperset.format_set(a)}" for n, a in sorted(self.env.items()))
        if verb == "show":
            self._arity(argv, 1)
            a = self.get(argv[0])
            return hyperset.format_set(a) + "\n" + render_equations(a.picture).rstrip("\n")
        if verb == "eq":
            self._arity(argv, 2)
            return "equal" if self.get(argv[0]) is self.get(argv[1]) else "not equal"
        if verb == "wf":
            self._arity(argv, 1)
            return "true" if hyperset.is_wellfounded(self.get(argv[0])) else "false"
        if verb == "members":
            self._arity(argv, 1)
            return "[" + ", ".join(map(hyperset.format_set, hyperset.members(self.get(argv[0])))) + "]"
        if verb == "unfold":
            self._arity(argv, 2)
            a = hyperset.unfold(self.get(argv[0]), self._rank(argv[1]))
            self.env["_"] = a
            return hyperset.format_set(a)
        if verb == "sat":
            name, _, text = rest.partition(" ")
            if not text.strip():
                raise UsageError("usage: sat VAR FORMULA")
            return "true" if modal.satisfies(self.get(name), modal.parse_formula(text)) else "false"
        if verb == "char":
            self._arity(argv, 2)
            f = modal.char_formula(self.get(argv[0]), self._rank(argv[1]), self.budget)
            return modal.format_formula(f, self.budget)
        if verb == "modal-eq":
            self._arity(argv, 3)
            a, b = self.get(argv[0]), self.get(argv[1])
            eq = modal.modally_equivalent(a, b, self._rank(argv[2]), self.budget)
            return "equivalent" if eq else "not equivalent"
        if verb == "classify":
            return self._classify(argv)
        raise UsageError(f"unknown command {verb!r} (try 'help')")

    def _classify(self, names):
        if names:
            return "\n".join(
                f"{n}: {'Wellfounded' if hyperset.is_wellfounded(self.get(n)) else 'NonWellfounded'}"
                for n in names
            )
        reg = events.UniverseRegistry("repl")
        for n, a in sorted(self.env.items()):
            if n != "_":
                reg.events[n] = events.Event(n, "", reg.subject, a)
        return events.report_text(reg).rstrip("\n")

    @staticmethod
    def _arity(argv, n):
        if len(argv) != n:
            raise UsageError(f"expected {n} argument(s), got {len(argv)}")

    @staticmethod
    def _rank(text):
        try:
            k = int(text)
        except ValueError:
            raise UsageError(f"not a rank: {text!r}") from None
        if k < 0:
            raise UsageError("rank must be nonnegative")
        return k

    def loop(self, inp, out):
        interactive = inp.isatty()
        while True:
            if interactive:
                out.write("afa> ")
                out.flush()
            line = inp.readline()
            if not line:
                break
            try:
                result = self.execute(line)
            except EOFError:
                break
            if result:
                out.write(result + "\n")
                out.flush()


# -- argument parsing -------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--show-canonical", action="store_true", help="also print canonical pictures")
    common.add_argument("--budget", type=int, default=modal.DEFAULT_BUDGET, help="formula size budget (nodes)")

    parser = argparse.ArgumentParser(prog="afaset", description="Hypersets, bisimulation and modal checks.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    verb("solve", cmd_solve, "solve every equation in FILE").add_argument("file")
    p = verb("check-eq", cmd_check_eq, "are two sets equal?")
    p.add_argument("left")
    p.add_argument("right")
    verb("wf", cmd_wf, "is the set wellfounded?").add_argument("ref")
    verb("minimize", cmd_minimize, "canonical minimal picture").add_argument("ref")
    p = verb("unfold", cmd_unfold, "rank-K unfolding")
    p.add_argument("ref")
    p.add_argument("rank", type=_nonneg)
    p = verb("sat", cmd_sat, "check a modal formula")
    p.add_argument("ref")
    p.add_argument("formula")
    p = verb("char", cmd_char, "characteristic formula of rank K")
    p.add_argument("ref")
    p.add_argument("rank", type=_nonneg)
    p = verb("modal-eq", cmd_modal_eq, "modal equivalence up to rank K")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("rank", type=_nonneg)
    verb("classify", cmd_classify, "classify an event registry").add_argument("registry")
    verb("export-dot", cmd_export_dot, "Graphviz text of a picture").add_argument("ref")
    p = verb("bench", cmd_bench, "time partition refinement on a random system")
    p.add_argument("--nodes", type=_nonneg, default=10000)
    p.add_argument("--density", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=0)
    verb("repl", cmd_repl, "interactive session")
    return parser


def _nonneg(text):
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return k


def run(argv=None, out=None, err=None):
    """Run one command; returns 0 on success, 1 on domain errors, 2 on usage errors."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        args.func(args, out)
    except UsageError as exc:
        err.write(f"afaset: {exc}\n")
        return 2
    except AfaError as exc:
        err.write(f"afaset: {type(exc).__name__}: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
