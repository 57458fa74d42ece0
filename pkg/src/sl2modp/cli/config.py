"""Suite configuration: defaults, flat ``key = value`` files, and validation."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace

from sympy import isprime

from ..algebra.field import field as gf
from ..weights import SmoothCharacter, parse_character

SUITES = ("cind-core", "supersingular", "pseries-unramified", "pseries-ramified", "steinberg",
          "isomorphism-table", "appendix-c")


class ConfigError(ValueError):
    """Invalid configuration; the CLI turns it into a usage error."""


@dataclass(frozen=True)
class SuiteConfig:
    p: int = 5
    k: int = 2
    r: str = "all"               # "all", "2", "0..3" or "0,2,4"
    lam: str = "0"               # field literal for λ in coker(T - λ)
    depth: int = 4
    slack: int = 1
    word_len: int = 4
    alphabet: str = "SL2_default"
    window: tuple[int, int] = (1, 1)
    seed: int = 0
    a: int | None = None         # unit exponent for the ramified suite
    eta: str | None = None       # character literal overriding the default η grid
    samples: int = 50
    suites: tuple[str, ...] = field(default_factory=tuple)

    def validate(self) -> "SuiteConfig":
        if self.p < 3 or not isprime(self.p):
            raise ConfigError(f"p = {self.p} must be an odd prime")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        self.r_values()
        self.lam_value()
        if self.depth < 2:
            raise ConfigError("depth must be >= 2")
        if self.slack < 0:
            raise ConfigError("slack must be >= 0")
        if self.word_len < 0:
            raise ConfigError("word length must be >= 0")
        if min(self.window) < 0:
            raise ConfigError("window entries must be >= 0")
        if self.a is not None and self.a % (self.p - 1) == 0:
            raise ConfigError(f"a = {self.a} is unramified; the ramified suite needs a ≢ 0 mod p-1")
        if self.eta is not None:
            self.character()
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        needs_quotient = {"cind-core", "supersingular"} & set(self.suites)
        if needs_quotient and self.slack < 1:
            raise ConfigError("the quotient suites need slack >= 1 so that preimages can be found")
        return self

    def r_values(self) -> list[int]:
        text = str(self.r).strip()
        try:
            if text == "all":
                vals = list(range(self.p))
            elif ".." in text:
                lo, hi = (int(t) for t in text.split(".."))
                vals = list(range(lo, hi + 1))
            else:
                vals = [int(t) for t in text.split(",")]
        except ValueError:
            raise ConfigError(f"bad r range {self.r!r}") from None
        if not vals or any(not 0 <= v <= self.p - 1 for v in vals):
            raise ConfigError(f"r range {self.r!r} must be non-empty inside 0..{self.p - 1}")
        return vals

    def lam_value(self) -> int:
        return parse_field_literal(self.lam, self.p, self.k)

    def character(self) -> SmoothCharacter:
        try:
            return parse_character(self.eta, self.p, self.k)
        except ValueError as e:
            raise ConfigError(str(e)) from None

    def echo(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        d["suites"] = list(self.suites)
        return d


def parse_field_literal(text: str, p: int, k: int) -> int:
    """An integer (read mod p) or comma-separated coordinates c0,...,c(k-1) over the F_{p^k} basis."""
    F = gf(p, k)
    parts = [t.strip() for t in str(text).split(",")]
    try:
        nums = [int(t) for t in parts]
    except ValueError:
        raise ConfigError(f"bad field literal {text!r}") from None
    if len(nums) == 1:
        return nums[0] % p
    if len(nums) > k:
        raise ConfigError(f"field literal {text!r} has more than {k} coordinates")
    return F._encode([n % p for n in nums])


_INT_KEYS = {"p", "k", "depth", "slack", "word_len", "seed", "a", "samples"}


def coerce(key: str, value) -> object:
    key = key.replace("-", "_")
    if key == "lambda":
        key = "lam"
    if value is None:
        return key, None
    if key in _INT_KEYS:
        try:
            return key, int(value)
        except ValueError:
            raise ConfigError(f"{key} must be an integer, got {value!r}") from None
    if key == "window":
        try:
            m, n = (int(t) for t in str(value).split(","))
        except ValueError:
            raise ConfigError(f"window must be M,N, got {value!r}") from None
        return key, (m, n)
    if key == "word_length":
        return "word_len", int(value)
    if key == "suites":
        if isinstance(value, str):
            value = [s.strip() for s in value.split(",") if s.strip()]
        return key, tuple(value)
    if key in {"r", "lam", "alphabet", "eta"}:
        return key, str(value)
    raise ConfigError(f"unknown configuration key {key!r}")


def parse_config_text(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected key = value")
        key, value = (t.strip() for t in line.split("=", 1))
        k, v = coerce(key, value)
        out[k] = v
    return out


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> SuiteConfig:
    """Defaults, then file values, then explicit overrides (flags win)."""
    cfg = SuiteConfig()
    merged = dict(file_values or {})
    for key, value in (overrides or {}).items():
        if value is not None:
            k, v = coerce(key, value)
            merged[k] = v
    try:
        cfg = replace(cfg, **merged)
    except TypeError as e:
        raise ConfigError(str(e)) from None
    return cfg.validate()
