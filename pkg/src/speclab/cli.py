"""``speclab`` command line.

Every subcommand prints one report table (CSV or JSON) and exits 0 only if
every verification it performed passed.  Exit status 1 marks a failed check,
2 a usage or spec-file error.
"""
import argparse
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from speclab import __version__
from speclab import perm as P
from speclab.arithmetic import ArithmeticProgression, PrimeSpec, factor_against
from speclab.errors import SpeclabError
from speclab.gp import gp_reduce, parse_word, quotient_action, relator_words
from speclab.joining import (
    adjoint_decompositions,
    multivalued_graph_check,
    off_diagonal_joining,
)
from speclab.models import ProductModel, multiplier_for, power, truncate
from speclab.report import FORMATS, ReportTable
from speclab.specfile import load_spec
from speclab.spectral import (
    closed_form_profile,
    hm_prime_powers,
    mm_theorem4,
    multiplicity_set_theorem5,
    oracle_profile,
    ratio_scan,
    remark1_configurations,
    theorem4_example,
)
from speclab.weaklimits import check_rigidity, check_wl, wl_progressions

COMMANDS = (
    "profile", "theorem4", "theorem5", "hm", "limit-points", "verify-oracle",
    "rigidity", "wl-verify", "conjugacy", "joining", "gp-word",
)
NEEDS_SPEC = set(COMMANDS) - {"joining", "gp-word"}


@dataclass
class RunConfig:
    command: str
    spec_path: str = None
    horizon: int = None
    level: int = None
    fmt: str = "csv"
    out: str = None
    seed: int = 0
    params: dict = field(default_factory=dict)


def parse_range(text):
    """``"a..b"`` (closed) or a single integer."""
    text = str(text).strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: need 1 <= a <= b")
    return range(lo, hi + 1)


def parse_progression(text):
    """``"r mod m"`` or ``"r/m"``."""
    text = text.replace("mod", "/").replace(" ", "")
    r, m = (int(v) for v in text.split("/"))
    return ArithmeticProgression.of(r, m)


# ------------------------------------------------------------------ commands

def _prime_spec(ms):
    if ms.prime_spec is None:
        raise SpeclabError("this command needs 'primes' in the model spec")
    return ms.prime_spec


def _level(cfg, model):
    level = cfg.level or model.depth
    if not 1 <= level <= model.depth:
        raise SpeclabError(f"level {level} outside 1..{model.depth}")
    return level


def cmd_profile(cfg, ms):
    model = ms.model
    level = _level(cfg, model)
    moduli = model.moduli_at(level)
    table = ReportTable(["n", "mm", "cardm", "multiplicity_set", "homogeneous", "dimension", "model_id"])
    use_oracle = cfg.params.get("oracle", False)
    for n in cfg.params.get("n") or range(1, 31):
        if use_oracle:
            _, rot = truncate(model, level)
            prof = oracle_profile(power(rot, n).permutation)
        else:
            prof = closed_form_profile(moduli, n)
        table.add(n, prof.mm, prof.cardm, prof.multiplicity_set, prof.homogeneous,
                  prof.dimension, f"{model.name}@{level}")
    return table


def cmd_theorem4(cfg, ms):
    spec = _prime_spec(ms)
    example = cfg.params.get("example")
    if example:
        table = ReportTable(["k", "N", "mm_formula", "coprime_to_P", "growth_hypothesis", "mm_is_1"])
        for k in range(1, example + 1):
            ex = theorem4_example(spec, k)
            table.add(k, ex.n, ex.formula_mm, ex.coprime_to_spec, ex.growth_hypothesis, ex.claim_holds)
            # the formula gives 1 exactly when N avoids P
            if ex.claim_holds != ex.coprime_to_spec:
                table.fail()
        return table
    table = ReportTable(["N", "hits", "residual", "mm"])
    for n in cfg.params.get("N") or range(1, 31):
        f = factor_against(n, spec)
        table.add(n, ["%d^%d" % h for h in f.hits], f.residual, mm_theorem4(n, spec))
    return table


def cmd_theorem5(cfg, ms):
    spec = _prime_spec(ms)
    table = ReportTable(["N", "m", "multiplicity_set", "cardm", "two_pow_m", "ok"])
    for n in cfg.params.get("N") or range(1, 31):
        values = multiplicity_set_theorem5(n, spec)
        m = factor_against(n, spec).m
        ok = len(values) == 2**m
        table.add(n, m, values, len(values), 2**m, ok)
        if not ok:
            table.fail()
    return table


def cmd_hm(cfg, ms):
    spec = _prime_spec(ms)
    if cfg.params.get("remark1"):
        target = cfg.params.get("target") or 2011
        exponent = cfg.params.get("exponent") or 10
        rep = remark1_configurations(target, exponent)
        table = ReportTable(["configuration", "first_n_with_hm_ne_n", f"hm_at_{target}"])
        table.add("literal", rep.literal_first_failure, rep.literal_hm_target)
        table.add(f"without_Z{target}", rep.omitted_first_failure, rep.omitted_hm_target)
        table.footer["discrepancy"] = rep.discrepancy
        return table
    table = ReportTable(["n", "hm", "hm_equals_n"])
    for n in cfg.params.get("n") or range(1, 31):
        h = hm_prime_powers(n, spec)
        table.add(n, h, h == n)
    return table


def cmd_limit_points(cfg, ms):
    spec = _prime_spec(ms)
    values = ratio_scan(spec, cfg.horizon or 1000)
    table = ReportTable(["value", "first_n"])
    for value, n in values:
        table.add(value, n)
    table.footer["distinct_values"] = len(values)
    return table


def cmd_verify_oracle(cfg, ms):
    model = ms.model
    level = _level(cfg, model)
    _, rot = truncate(model, level)
    max_n = cfg.params.get("max_n") or 100
    table = ReportTable(["n", "closed_form_mm", "oracle_mm", "match"])
    matches = 0
    for n in range(1, max_n + 1):
        closed = closed_form_profile(model.moduli_at(level), n)
        oracle = oracle_profile(P.power(rot.permutation, n))
        ok = closed == oracle
        matches += ok
        table.add(n, closed.mm, oracle.mm, ok)
        if not ok:
            table.fail()
    table.footer["matches"] = f"{matches}/{max_n}"
    return table


def cmd_rigidity(cfg, ms):
    model = ms.model
    level = _level(cfg, model)
    prog = cfg.params.get("progression") or ArithmeticProgression(0, model.order_at(level))
    cert = check_rigidity(model, prog, level, sample=cfg.params.get("sample"))
    table = ReportTable(["n", "power_is_identity"])
    for n, ok in cert.verdicts:
        table.add(n, ok)
    table.footer.update(progression=str(prog), level=level, verdict=cert.verdict,
                        threshold=cert.threshold, vacuous=cert.vacuous)
    if not cert.verdict:
        table.fail()
    return table


def _single_prime_models(spec, count):
    return [ProductModel.from_spec(PrimeSpec([p], [d]))
            for p, d in list(zip(spec.primes, spec.exponents))[:count]]


def cmd_wl_verify(cfg, ms):
    spec = _prime_spec(ms)
    k = cfg.params.get("stages") or len(spec)
    models = _single_prime_models(spec, k)
    primes = spec.primes[:k]
    table = ReportTable(["stage", "progression", "n", "limit_holds", "decomposition", "product_simple"])
    progressions = wl_progressions(models, primes)
    cert = check_wl(models, primes, progressions, sample=cfg.params.get("sample"))
    for stage in cert.stages:
        for n, ok in stage.checked:
            table.add(stage.factors, str(stage.progression), n, ok, stage.decomposition_ok,
                      stage.product_simple)
        if not stage.verdict:
            table.add(stage.factors, str(stage.progression), stage.witness, False,
                      stage.decomposition_ok, stage.product_simple)
    table.footer.update(limit=cert.limit, verdict=cert.verdict, threshold=cert.threshold)
    if not cert.verdict:
        table.fail()
    return table


def cmd_conjugacy(cfg, ms):
    model = ms.model
    level = _level(cfg, model)
    _, rot = truncate(model, level)
    base = oracle_profile(rot.permutation)
    table = ReportTable(["q", "coefficients", "automorphism", "conjugation_witness", "profiles_equal"])
    for q in cfg.params.get("q") or [2]:
        psi = multiplier_for(model, q, level)
        witness = psi.conjugation_witness(rot, q)
        auto = psi.is_automorphism()
        same = oracle_profile(power(rot, q).permutation) == base
        table.add(q, psi.coefficients, auto, witness, same)
        if witness is not None or not auto or not same:
            table.fail()
    table.footer["level"] = level
    return table


def cmd_joining(cfg, ms):
    p = cfg.params.get("p") or 3
    m = cfg.params.get("m") or 2
    S, Phi = quotient_action(p, m)
    R = P.compose(S, Phi)
    graph = multivalued_graph_check(Phi, R, p)
    joining = off_diagonal_joining(Phi, R)
    J = joining.markov()
    left, right = adjoint_decompositions(J)
    table = ReportTable(["check", "value", "ok"])
    rows = [
        ("points", R.size, True),
        ("factor_atoms", joining.size, joining.size * p == R.size),
        ("p_images_distinct", not graph.witnesses, graph.distinct),
        ("joining_valuedness", joining.valuedness, joining.valuedness == p),
        ("uniform_marginals", joining.marginals_uniform(), joining.marginals_uniform()),
        ("invariance_witness", joining.invariance_witness(), joining.invariance_witness() is None),
        ("JstarJ_alpha", left.alpha, left.alpha == Fraction(1, p)),
        ("JJstar_alpha", right.alpha, right.alpha == Fraction(1, p)),
        ("valuedness_equal", (left.valuedness, right.valuedness), left.valuedness == right.valuedness == p),
    ]
    for name, value, ok in rows:
        table.add(name, value, ok)
        if not ok:
            table.fail()
    if graph.witnesses:
        table.add("collision_at", graph.witnesses[0], False)
    dump = cfg.params.get("dump")
    if dump:
        Path(dump).write_text("\n".join(",".join(row) for row in joining.matrix.dump()) + "\n")
    table.footer.update(p=p, m=m)
    return table


def _random_word(rng, length):
    return [(rng.choice(("s", "phi")), rng.choice((1, -1))) for _ in range(length)]


def _word_str(word):
    return " ".join(name if sign > 0 else f"{name}^-1" for name, sign in word)


def cmd_gp_word(cfg, ms):
    p = cfg.params.get("p") or 2
    table = ReportTable(["kind", "word", "normal_form", "ok"])
    word = cfg.params.get("word")
    if word is not None:
        nf = gp_reduce(p, word)
        word2 = cfg.params.get("word2")
        if word2 is None:
            table.add("word", word, str(nf), True)
        else:
            nf2 = gp_reduce(p, word2)
            joint = gp_reduce(p, parse_word(word) + parse_word(word2))
            ok = joint == nf * nf2
            table.add("product", f"{word} | {word2}", str(joint), ok)
            if not ok:
                table.fail()
        return table
    for rel in relator_words(p):
        nf = gp_reduce(p, rel)
        table.add("relator", _word_str(rel), str(nf), nf.is_identity)
        if not nf.is_identity:
            table.fail()
    rng = random.Random(cfg.seed)
    count = cfg.params.get("random") or 1000
    failures = 0
    for _ in range(count):
        w1 = _random_word(rng, rng.randint(0, 20))
        w2 = _random_word(rng, rng.randint(0, 20))
        if gp_reduce(p, w1 + w2) != gp_reduce(p, w1) * gp_reduce(p, w2):
            failures += 1
            table.add("homomorphism", f"{_word_str(w1)} | {_word_str(w2)}", "", False)
            table.fail()
    table.footer.update(random_pairs=count, failures=failures, seed=cfg.seed)
    return table


HANDLERS = {
    "profile": cmd_profile,
    "theorem4": cmd_theorem4,
    "theorem5": cmd_theorem5,
    "hm": cmd_hm,
    "limit-points": cmd_limit_points,
    "verify-oracle": cmd_verify_oracle,
    "rigidity": cmd_rigidity,
    "wl-verify": cmd_wl_verify,
    "conjugacy": cmd_conjugacy,
    "joining": cmd_joining,
    "gp-word": cmd_gp_word,
}


def run(cfg):
    """Execute one command; returns ``(ReportTable, exit_status)``."""
    if cfg.command not in HANDLERS:
        raise SpeclabError(f"unknown command {cfg.command!r}")
    ms = None
    if cfg.command in NEEDS_SPEC:
        if not cfg.spec_path:
            raise SpeclabError(f"{cfg.command} needs --spec")
        ms = load_spec(cfg.spec_path)
    try:
        table = HANDLERS[cfg.command](cfg, ms)
    except SpeclabError as exc:
        table = ReportTable(["error"], footer={})
        table.add(str(exc))
        table.fail()
    table.footer["command"] = _canonical(cfg)
    table.footer["spec_sha256"] = ms.sha256 if ms else "none"
    table.footer["version"] = __version__
    return table, 0 if table.ok else 1


def _canonical(cfg):
    parts = [cfg.command]
    for key in ("horizon", "level"):
        value = getattr(cfg, key)
        if value is not None:
            parts.append(f"{key}={value}")
    for key, value in sorted(cfg.params.items()):
        if value is None or value is False:
            continue
        if value is True:
            parts.append(key)
            continue
        if isinstance(value, range):
            value = f"{value.start}..{value.stop - 1}"
        elif isinstance(value, (list, tuple)):
            value = ",".join(map(str, value))
        parts.append(f"{key}={value}")
    parts.append(f"seed={cfg.seed}")
    return " ".join(parts)


# -------------------------------------------------------------------- argparse

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--spec", help="model spec file")
    common.add_argument("--level", type=int, help="truncation level (default: model depth)")

    parser = argparse.ArgumentParser(prog="speclab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"speclab {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("profile", parents=[common], help="multiplicity profile of R^n")
    p.add_argument("--n", type=parse_range, default=None)
    p.add_argument("--oracle", action="store_true", help="use the cycle-type oracle")

    p = sub.add_parser("theorem4", parents=[common], help="mm(R^N) from the prime factorization")
    p.add_argument("--N", type=parse_range, default=None)
    p.add_argument("--example", type=int, help="check N = p_1...p_k + 1 for k = 1..K")

    p = sub.add_parser("theorem5", parents=[common], help="multiplicity sets of R^N")
    p.add_argument("--N", type=parse_range, default=None)

    p = sub.add_parser("hm", parents=[common], help="homogeneous multiplicity of R^n")
    p.add_argument("--n", type=parse_range, default=None)
    p.add_argument("--remark1", action="store_true",
                   help="compare the prime-power space with and without Z_target")
    p.add_argument("--target", type=int)
    p.add_argument("--exponent", type=int)

    p = sub.add_parser("limit-points", parents=[common], help="distinct values of hm(R^n)/n")
    p.add_argument("--horizon", type=int, default=1000)

    p = sub.add_parser("verify-oracle", parents=[common], help="closed form vs cycle-type oracle")
    p.add_argument("--max-n", type=int, default=100)

    p = sub.add_parser("rigidity", parents=[common], help="R^n -> I along a progression")
    p.add_argument("--progression", type=parse_progression, help='"r mod m"')
    p.add_argument("--sample", type=int)

    p = sub.add_parser("wl-verify", parents=[common], help="WL(k) chain on single-prime models")
    p.add_argument("--stages", type=int, help="number of primes k (default: all)")
    p.add_argument("--sample", type=int)

    p = sub.add_parser("conjugacy", parents=[common], help="multiplier conjugates R to R^q")
    p.add_argument("--q", type=lambda s: [int(v) for v in s.split(",")], default=None)

    p = sub.add_parser("joining", parents=[common], help="off-diagonal joining of a G_p quotient")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--dump", help="write the joining matrix as p/q strings")

    p = sub.add_parser("gp-word", parents=[common], help="normal forms in G_p")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--word")
    p.add_argument("--word2")
    p.add_argument("--random", type=int, default=1000)
    return parser


_CONFIG_KEYS = {"command", "spec", "format", "out", "seed", "level", "horizon"}


def config_from_args(args):
    params = {k: v for k, v in vars(args).items() if k not in _CONFIG_KEYS}
    return RunConfig(
        command=args.command,
        spec_path=args.spec,
        horizon=getattr(args, "horizon", None),
        level=args.level,
        fmt=args.format,
        out=args.out,
        seed=args.seed,
        params=params,
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    try:
        table, status = run(cfg)
    except SpeclabError as exc:
        print(f"speclab: error: {exc}", file=sys.stderr)
        return 2
    text = table.render(cfg.fmt)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
