"""Model spec files.

Plain ``key = value`` lines; ``#`` starts a comment::

    # first three primes, squarefree
    primes = 2,3,5
    exponents = 1,1,1
    depth = 3

``exponents`` defaults to all ones and ``depth`` to the number of primes.  An
optional ``moduli = 4,9,5`` replaces the prime-power moduli with an explicit,
pairwise coprime list (``primes`` may then be omitted).
"""
import hashlib
from dataclasses import dataclass
from pathlib import Path

from speclab.arithmetic import PrimeSpec
from speclab.errors import SpecFileError
from speclab.models import ProductModel

KEYS = ("primes", "exponents", "depth", "moduli", "name")


@dataclass(frozen=True)
class ModelSpec:
    model: ProductModel
    prime_spec: PrimeSpec
    sha256: str
    source: str


def _ints(value, key, line, path):
    try:
        out = [int(v) for v in value.replace(" ", "").split(",") if v]
    except ValueError:
        raise SpecFileError(f"{key} must be a comma-separated list of integers", line, path) from None
    if not out:
        raise SpecFileError(f"{key} is empty", line, path)
    return out


def parse_spec(text, path=None):
    fields = {}
    where = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecFileError(f"expected 'key = value', got {raw.strip()!r}", lineno, path)
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in KEYS:
            raise SpecFileError(f"unknown key {key!r} (known: {', '.join(KEYS)})", lineno, path)
        if key in fields:
            raise SpecFileError(f"duplicate key {key!r}", lineno, path)
        fields[key] = value
        where[key] = lineno

    def ints(key):
        return _ints(fields[key], key, where[key], path)

    moduli = ints("moduli") if "moduli" in fields else None
    prime_spec = None
    if "primes" in fields:
        primes = ints("primes")
        exponents = ints("exponents") if "exponents" in fields else None
        try:
            prime_spec = PrimeSpec(primes, exponents)
        except ValueError as exc:
            raise SpecFileError(str(exc), where.get("exponents", where["primes"]), path) from None
    elif "exponents" in fields:
        raise SpecFileError("exponents given without primes", where["exponents"], path)
    if moduli is None and prime_spec is None:
        raise SpecFileError("spec needs 'primes' or 'moduli'", None, path)

    depth = None
    if "depth" in fields:
        values = ints("depth")
        if len(values) != 1:
            raise SpecFileError("depth must be a single integer", where["depth"], path)
        depth = values[0]
    name = fields.get("name", "")
    try:
        if moduli is not None:
            model = ProductModel(tuple(moduli), depth, prime_spec, name)
        else:
            model = ProductModel.from_spec(prime_spec, depth, name)
    except ValueError as exc:
        key = "depth" if "depth" in str(exc) else ("moduli" if moduli is not None else "primes")
        raise SpecFileError(str(exc), where.get(key), path) from None
    digest = hashlib.sha256(text.encode()).hexdigest()
    return ModelSpec(model, prime_spec, digest, str(path) if path else "<string>")


def load_spec(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecFileError(f"cannot read spec: {exc.strerror}", None, path) from None
    return parse_spec(text, path)
