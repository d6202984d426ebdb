"""Command-line front end.

Every subcommand prints a JSON certificate on stdout and a short summary on
stderr.  Exit status: 0 for success or a true verdict, 1 for a well-formed
false verdict, 2 for invalid input or usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Sequence

from . import __version__, corpus, terms
from .algebra import FiniteAlgebra, Homomorphism, are_isomorphic, from_document, from_json
from .classify import classify
from .constructions import (
    ChainFamilySpec,
    ap_family,
    ap_plus,
    named_algebra,
    oplus,
    otimes,
    reflection,
    rigorous_extension,
    sugihara,
)
from .errors import DmlabError, InvalidAlgebra, MalformedInput, TermError
from .filters import congruence_classes
from .morphisms import (
    all_homomorphisms,
    hs_up_to_iso,
    is_epic,
    separating_pair_gsm,
    separating_pair_idem,
    subalgebra_generated,
)
from .structure import (
    bound_check,
    decompose_dmm,
    decompose_otimes,
    min_generating_set,
    neg_gen_equivalence_suite,
    reflection_recognize,
)

ELEMENT_LIST_OPTIONS = ("--sub", "--element", "--generators")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input handling -------------------------------------------------------------


class Session:
    """Resolves algebra arguments and records input hashes for the certificate."""

    def __init__(self, use_corpus: bool):
        self.use_corpus = use_corpus
        self.inputs: dict[str, str] = {}

    def load(self, ref: str) -> FiniteAlgebra:
        key = None
        if ref.startswith("corpus:"):
            key = ref[len("corpus:"):]
        elif self.use_corpus:
            key = ref
        if key is not None:
            try:
                A = corpus.get(key)
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from None
            self.inputs[ref] = _sha(A.to_json(include_labels=True).encode())
            return A
        try:
            with open(ref, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {ref}: {exc.strerror}") from None
        self.inputs[ref] = _sha(data)
        return from_json(data.decode("utf-8"))


def _sha(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def parse_elements(A: FiniteAlgebra, text: str) -> list[int]:
    if text.strip() == "":
        return []
    out = []
    for token in text.split(","):
        try:
            out.append(A.index(token.strip()))
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    return out


def _labels(A: FiniteAlgebra, xs) -> list[str]:
    return [A.label(x) for x in xs]


def _map_doc(h: Homomorphism) -> dict:
    return {"map": list(h.map), "labels": {h.source.label(x): h.target.label(v) for x, v in enumerate(h.map)}}


def _asg_doc(A: FiniteAlgebra, asg: dict | None):
    if asg is None:
        return None
    return {k: {"index": v, "label": A.label(v)} for k, v in asg.items()}


# -- subcommands -----------------------------------------------------------------------


def cmd_validate(args, s: Session):
    try:
        A = s.load(args.input)
    except MalformedInput:
        raise
    except InvalidAlgebra as exc:
        return False, {"error": type(exc).__name__, "message": str(exc)}, f"invalid: {exc}"
    kind = "involutive residuated lattice" if A.involutive else "residuated lattice"
    return True, {"size": A.size, "involutive": A.involutive}, f"valid {kind} with {A.size} elements"


def cmd_classify(args, s: Session):
    A = s.load(args.input)
    rep = classify(A)
    flags = rep.flags()
    on = [k for k, v in flags.items() if v]
    return True, {"flags": flags, "witnesses": rep.witnesses}, f"{A.name or args.input}: {', '.join(on)}"


def cmd_construct(args, s: Session):
    kind, rest = args.kind, args.params
    need = {"sugihara": 1, "otimes": 1, "oplus": 1, "reflect": 1, "rext": 2, "ap": 1, "ap+": 1, "named": 1}
    if kind not in need:
        raise UsageError(f"unknown construction {kind!r}; choose from {', '.join(need)}")
    if len(rest) != need[kind]:
        raise UsageError(f"construct {kind} takes {need[kind]} argument(s)")

    def number(text):
        try:
            v = int(text)
        except ValueError:
            raise UsageError(f"expected an integer, got {text!r}") from None
        if v < 1:
            raise UsageError("the parameter must be at least 1")
        return v

    if kind == "sugihara":
        A = sugihara(number(rest[0]))
    elif kind == "oplus":
        A = oplus(number(rest[0]))
    elif kind == "ap":
        A = ap_family(number(rest[0]))
    elif kind == "ap+":
        A = ap_plus(number(rest[0]))
    elif kind == "named":
        try:
            A = named_algebra(rest[0])
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    elif kind == "reflect":
        A = reflection(s.load(rest[0]))
    elif kind == "rext":
        A = rigorous_extension(s.load(rest[0]), s.load(rest[1]))
    else:
        A = _otimes_from_file(rest[0], s)
    return True, A.to_document(include_labels=not args.bare), f"constructed {A.name or kind} with {A.size} elements"


def _otimes_from_file(path: str, s: Session) -> FiniteAlgebra:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    s.inputs[path] = _sha(data)
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "base" not in doc:
        raise MalformedInput("a chain-family spec needs a 'base' entry")
    base_ref = doc["base"]
    if isinstance(base_ref, str):
        base = s.load(base_ref)
    else:
        base = from_document(base_ref)
    sizes = {}
    for token, k in dict(doc.get("sizes", {})).items():
        sizes[parse_elements(base, str(token))[0]] = k
    return otimes(ChainFamilySpec(base, sizes))


def cmd_homs(args, s: Session):
    A, B = s.load(args.source), s.load(args.target)
    homs = all_homomorphisms(A, B)
    return True, {"count": len(homs), "homomorphisms": [_map_doc(h) for h in homs]}, \
        f"{len(homs)} homomorphism(s)"


def cmd_epic(args, s: Session):
    A = s.load(args.ambient)
    gens = [s.load(g) for g in args.gens.split(",") if g]
    if not gens:
        raise UsageError("--gens needs at least one algebra")
    B = parse_elements(A, args.sub)
    members = hs_up_to_iso(gens)
    if not any(are_isomorphic(A, C) for C in members):
        print("warning: the ambient algebra is not in HS of the generators; "
              "the verdict assumes it lies in the generated variety", file=sys.stderr)
    v = is_epic(A, B, gens)
    wit = {"targets_checked": v.targets_checked}
    if v.witness is not None:
        w = v.witness
        wit.update({"target": w.target.to_document(include_labels=True), "g": _map_doc(w.g), "h": _map_doc(w.h),
                    "element": {"index": w.element, "label": A.label(w.element)}})
    summary = "epic" if v.epic else f"not epic: maps differ at {A.label(v.witness.element)}"
    return v.epic, wit, summary


def cmd_separate(args, s: Session):
    A = s.load(args.ambient)
    B = parse_elements(A, args.sub)
    els = parse_elements(A, args.element)
    if len(els) != 1:
        raise UsageError("--element takes exactly one element")
    fn = separating_pair_gsm if args.gsm else separating_pair_idem
    sp = fn(A, B, els[0])
    wit = {
        "case": sp.case,
        "replaced_by_star": sp.replaced_by_star,
        "used_element": {"index": sp.used_element, "label": A.label(sp.used_element)},
        "target": sp.target.to_document(include_labels=True),
        "g": _map_doc(sp.g),
        "h": _map_doc(sp.h),
    }
    return True, wit, f"separated at {A.label(sp.element)} ({sp.case} case)"


def cmd_decompose(args, s: Session):
    A = s.load(args.input)
    if args.mode == "otimes":
        d = decompose_otimes(A)
        wit = {
            "base_universe": _labels(A, d.base_universe),
            "blocks": {A.label(c): _labels(A, m) for c, m in d.blocks.items()},
            "block_sizes": list(d.block_sizes()),
            "iso": _map_doc(d.iso),
        }
        return True, wit, f"A** has {d.base.size} elements; block sizes {list(d.block_sizes())}"
    if args.mode == "dmm":
        d = decompose_dmm(A)
        wit = {
            "core": _labels(A, d.core_universe),
            "odd_factor": d.odd_factor.to_document(include_labels=True),
            "e_class": _labels(A, d.e_class),
            "other_classes_singletons": d.other_classes_singletons,
            "quotient_classes": [_labels(A, c) for c in congruence_classes(d.quotient_map.map)],
            "iso": _map_doc(d.iso),
        }
        return True, wit, f"core of size {d.core.size}, odd factor of size {d.odd_factor.size}"
    r = reflection_recognize(A)
    wit = {"reason": r.reason, "base": _labels(A, r.universe)}
    if r.iso is not None:
        wit["iso"] = _map_doc(r.iso)
    return r.is_reflection, wit, ("a reflection" if r.is_reflection else f"not a reflection: {r.reason}")


def cmd_check(args, s: Session):
    A = s.load(args.input)
    if args.equation or args.named:
        if args.equation:
            lhs, rhs = terms.parse_equation(args.equation, max_exponent=A.size)
        else:
            if args.named not in terms.NAMED_EQUATIONS:
                raise UsageError(f"unknown equation {args.named!r}; known: {', '.join(terms.NAMED_EQUATIONS)}")
            lhs, rhs = terms.NAMED_EQUATIONS[args.named]
        return _equation_result(A, lhs, rhs)
    if args.suite is None:
        raise UsageError("check needs --suite, --equation or --named")
    if args.suite == "negcone":
        lhs, rhs = terms.NAMED_EQUATIONS["negcone"]
        return _equation_result(A, lhs, rhs)
    if args.suite == "bounds":
        gens = parse_elements(A, args.generators) if args.generators is not None else list(min_generating_set(A))
        r = bound_check(A, gens)
        wit = {"generators": _labels(A, gens), "size": r.size, "applicable": r.applicable,
               "bound": r.bound, "slack": r.slack}
        return r.holds, wit, f"|A| = {r.size}, bound {r.bound}, slack {r.slack}"
    rep = neg_gen_equivalence_suite(A)
    wit = {"kind": rep.kind, "conditions": rep.conditions, "agree": rep.agree, "details": _jsonable(rep.details)}
    ok = rep.agree and rep.verdict
    summary = ("negatively generated; all characterizations agree" if ok else
               "characterizations DISAGREE" if not rep.agree else "not negatively generated")
    return ok, wit, summary


def _equation_result(A, lhs, rhs):
    v = terms.check_equation(A, lhs, rhs)
    wit = {"lhs": terms.to_text(lhs), "rhs": terms.to_text(rhs), "variables": list(v.variables),
           "counterexample": _asg_doc(A, v.counterexample)}
    if not v.holds:
        wit["values"] = {"lhs": A.label(v.lhs_value), "rhs": A.label(v.rhs_value)}
        cex = ", ".join(f"{k} = {A.label(x)}" for k, x in v.counterexample.items())
        return False, wit, f"fails at {cex}"
    return True, wit, "holds"


def cmd_subalg(args, s: Session):
    A = s.load(args.input)
    X = parse_elements(A, args.generators or "")
    sub, inc = subalgebra_generated(A, X)
    wit = {"universe": _labels(A, inc.map), "indices": list(inc.map), "algebra": sub.to_document(include_labels=True)}
    return True, wit, f"subalgebra with {sub.size} elements"


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=lambda o: sorted(o) if isinstance(o, (set, frozenset)) else str(o)))


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dmlab", description="Finite residuated lattice workbench.")
    p.add_argument("--corpus", action="store_true",
                   help="read algebra arguments as keys of the built-in corpus: " + ", ".join(corpus.KEYS))
    p.add_argument("--version", action="version", version=f"dmlab {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("validate", help="check the axioms of an algebra document")
    c.add_argument("input")
    c = sub.add_parser("classify", help="compute classification flags")
    c.add_argument("input")
    c = sub.add_parser("construct", help="build an algebra and print its JSON document")
    c.add_argument("kind", help="sugihara | otimes | oplus | reflect | rext | ap | ap+ | named")
    c.add_argument("params", nargs="*")
    c.add_argument("--bare", action="store_true", help="omit element labels from the output")
    c = sub.add_parser("homs", help="list all homomorphisms")
    c.add_argument("source")
    c.add_argument("target")
    c = sub.add_parser("epic", help="decide whether a subalgebra is epic")
    c.add_argument("--ambient", required=True)
    c.add_argument("--sub", required=True)
    c.add_argument("--gens", required=True, help="comma-separated generating algebras")
    c = sub.add_parser("separate", help="build homomorphisms that agree on a subalgebra")
    c.add_argument("--ambient", required=True)
    c.add_argument("--sub", required=True)
    c.add_argument("--element", required=True)
    c.add_argument("--gsm", action="store_true")
    c = sub.add_parser("decompose", help="structural decompositions")
    c.add_argument("--mode", required=True, choices=["otimes", "dmm", "reflect"])
    c.add_argument("input")
    c = sub.add_parser("check", help="equations and checking suites")
    c.add_argument("--suite", choices=["negcone", "bounds", "structure"])
    c.add_argument("--equation")
    c.add_argument("--named")
    c.add_argument("--generators")
    c.add_argument("input")
    c = sub.add_parser("subalg", help="subalgebra generated by elements")
    c.add_argument("input")
    c.add_argument("--generators", default="")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "construct": cmd_construct,
    "homs": cmd_homs,
    "epic": cmd_epic,
    "separate": cmd_separate,
    "decompose": cmd_decompose,
    "check": cmd_check,
    "subalg": cmd_subalg,
}


def _attach_values(argv: Sequence[str]) -> list[str]:
    """Let element lists such as ``--sub -1,0,1`` through argparse."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ELEMENT_LIST_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_values(argv))
        if args.command is None:
            raise UsageError("a subcommand is required")
        session = Session(args.corpus)
        verdict, witnesses, summary = COMMANDS[args.command](args, session)
    except UsageError as exc:
        print(f"dmlab: error: {exc}", file=sys.stderr)
        return 2
    except (DmlabError, TermError) as exc:
        print(f"dmlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.command == "construct":
        print(json.dumps(witnesses))
    else:
        cert = {
            "command": ["dmlab", *argv],
            "inputs": session.inputs,
            "verdict": verdict,
            "witnesses": witnesses,
            "version": f"dmlab {__version__}",
        }
        print(json.dumps(cert, indent=1))
    print(summary, file=sys.stderr)
    return 0 if verdict else 1


if __name__ == "__main__":
    sys.exit(main())
