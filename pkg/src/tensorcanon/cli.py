"""Script runner and interactive session for the canonicalization engine."""

from __future__ import annotations

import argparse
import sys
import time

from . import frontend, texpr
from .frontend import (Assignment, ExprEval, KBasisQuery, ParseError, ShowTime,
                       SwitchSet, SymDecl, TClear, TensorDecl)
from .kbasis import KBasis
from .texpr import Registry, TensorError, TensorHeader


class Session:
    """One evaluation session: registry, name bindings and switches."""

    def __init__(self, out=None, err=None, max_rank=8, packed=True,
                 echo=False, auto_time=False):
        self.out = out if out is not None else sys.stdout
        self.err = err if err is not None else sys.stderr
        self.registry = Registry(diag=self._diag, max_rank=max_rank)
        self.registry.switches["packed"] = packed
        self.bindings: dict[str, frontend.TermList] = {}
        self.echo = echo
        self.auto_time = auto_time
        self._clock = time.monotonic()

    def _diag(self, msg: str):
        print(msg, file=self.err)

    def _print(self, text: str):
        print(text, file=self.out)

    def run_text(self, text: str) -> int:
        try:
            statements = frontend.parse(text)
        except ParseError as e:
            self._diag(f"***** {e}")
            return 1
        status = 0
        for stmt in statements:
            if self.echo:
                self._print(stmt.src)
            try:
                self.execute(stmt)
            except (ParseError, TensorError) as e:
                self._diag(f"***** {e}")
                status = 1
        return status

    def execute(self, stmt):
        reg = self.registry
        if isinstance(stmt, TensorDecl):
            for name in stmt.names:
                reg.declare(name)
        elif isinstance(stmt, TClear):
            for name in stmt.names:
                reg.undeclare(name)
        elif isinstance(stmt, SymDecl):
            for rel in stmt.relations:
                resolved = frontend.resolve(rel, self.bindings)
                reg.declare_symmetry(frontend.to_raw_terms(resolved))
        elif isinstance(stmt, KBasisQuery):
            for spec in stmt.specs:
                self._print_basis(spec)
        elif isinstance(stmt, SwitchSet):
            if stmt.name not in reg.switches:
                self._diag(f"+++ unknown switch: {stmt.name}")
            else:
                reg.switches[stmt.name] = stmt.on
        elif isinstance(stmt, Assignment):
            self.bindings[stmt.name] = frontend.resolve(stmt.expr,
                                                        self.bindings)
        elif isinstance(stmt, ExprEval):
            self._evaluate(stmt.expr)
        elif isinstance(stmt, ShowTime):
            now = time.monotonic()
            ms = round((now - self._clock) * 1000)
            self._clock = now
            self._print(f"Time: {ms} ms")

    def _evaluate(self, expr):
        reg = self.registry
        t0 = time.monotonic()
        raw = frontend.to_raw_terms(frontend.resolve(expr, self.bindings))
        te = reg.normalize(raw)
        result = reg.simplify(te)
        shown = (result.shortest if reg.switches["shortest"]
                 else result.canonical)
        self._print(frontend.format_expr(shown, reg.switches["dummypri"]))
        if self.auto_time:
            self._print(f"Time: {round((time.monotonic() - t0) * 1000)} ms")

    # -- bases ---------------------------------------------------------

    def basis_for(self, spec) -> tuple[KBasis, TensorHeader]:
        """The stored basis of a tensor, or the product basis of factors."""
        name, factor_names = spec
        reg = self.registry
        names = (name,) + factor_names if factor_names else (name,)
        factors = []
        for fn in names:
            t = reg.tensors.get(fn)
            if t is None:
                raise TensorError(f"Invalid as tensor: {fn}")
            if t.arity is None:
                raise TensorError(f"arity of {fn} is not fixed yet"
                                  " (evaluate or declare a relation first)")
            factors.append((fn, t.arity))
        if len(factors) == 1:
            t = reg.tensors[name]
            header = TensorHeader(((name, t.arity),),
                                  tuple(texpr.IndexSlot("free", x)
                                        for x in self._display(t)))
            return t.k0_basis(), header
        factors.sort(key=lambda f: f[0])
        slots = []
        for fn, arity in factors:
            disp = self._display(reg.tensors[fn])
            slots.extend(texpr.IndexSlot("free", x) for x in disp)
        header = TensorHeader(tuple(factors), tuple(slots))
        return reg.expression_basis(header, with_dummies=False), header

    @staticmethod
    def _display(tensor) -> tuple[str, ...]:
        return tensor.display or frontend.default_names(tensor.arity)

    def _print_basis(self, spec):
        basis, header = self.basis_for(spec)
        names = [s.name for s in header.slots]
        for row in basis.rows:
            self._print(frontend.format_vector(row, header.factors, names))
        self._print(str(basis.dim()))


def memtable(max_rank: int) -> str:
    """Storage-estimate table for ranks 1..max_rank."""
    if max_rank > 20:
        raise ValueError("memtable limited to rank 20")
    lines = ["rank\tMcells\tMByte"]
    for n in range(1, max_rank + 1):
        mc, mb = texpr.estimate_memory(n)
        lines.append(f"{n}\t{mc:.6g}\t{mb:.6g}")
    return "\n".join(lines) + "\n"


def export_basis(session: Session, spec_text: str, as_json: bool) -> str:
    """Textual or structured dump of a stored or product basis."""
    specs = frontend._Parser(spec_text + ";")._basis_spec()
    basis, _ = session.basis_for(specs)
    return basis.dump_json() if as_json else basis.dump_text()


def build_argparser():
    ap = argparse.ArgumentParser(
        prog="tensorcanon",
        description="Canonicalize indexed expressions under symmetries,"
                    " multiterm linear identities and dummy renamings.")
    ap.add_argument("--script", metavar="FILE",
                    help="run a command script instead of reading stdin")
    ap.add_argument("--max-rank", type=int, default=8, metavar="N",
                    help="refuse expressions with more than N indices"
                         " (default 8; the group algebra grows as N!)")
    ap.add_argument("--export-basis", metavar="SPEC",
                    help="after the script, dump the basis of SPEC"
                         " (a tensor name or name(name,...))")
    ap.add_argument("--json", action="store_true",
                    help="structured basis export instead of text")
    ap.add_argument("--output", metavar="FILE",
                    help="write the basis export here (default stdout)")
    ap.add_argument("--no-packed", action="store_true",
                    help="store bases with unpacked permutations")
    ap.add_argument("--time", action="store_true", dest="auto_time",
                    help="print elapsed time after each evaluation")
    ap.add_argument("--memtable", type=int, metavar="N",
                    help="print the storage-estimate table up to rank N"
                         " and exit")
    return ap


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    args = build_argparser().parse_args(argv)
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    if args.memtable is not None:
        try:
            out.write(memtable(args.memtable))
        except ValueError as e:
            print(f"***** {e}", file=err)
            return 1
        return 0
    session = Session(out=out, err=err, max_rank=args.max_rank,
                      packed=not args.no_packed, echo=bool(args.script),
                      auto_time=args.auto_time)
    if args.script:
        try:
            with open(args.script) as fh:
                text = fh.read()
        except OSError as e:
            print(f"***** {e}", file=err)
            return 1
    else:
        text = (stdin if stdin is not None else sys.stdin).read()
    status = session.run_text(text)
    if args.export_basis:
        try:
            dump = export_basis(session, args.export_basis, args.json)
        except (ParseError, TensorError) as e:
            print(f"***** {e}", file=err)
            return 1
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(dump)
        else:
            out.write(dump)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
