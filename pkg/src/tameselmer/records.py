"""Plain-text records for deformations, lattice actions, series and cocycles.

Records are INI sections with decimal entries; matrices are four residues
in row-major order.
"""

from __future__ import annotations

import configparser
from io import StringIO
from typing import Mapping

from .isogeny_selmer import LocalLatticeAction
from .iwasawa import DistinguishedPoly, ElementaryModule, LambdaSeries
from .local_cohom import AdCocycle
from .padic import Mat2
from .tame_deform import TameDeformation, TrivialPrime


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ValueError(f"malformed integer list: {text!r}") from exc


def _int(section: Mapping[str, str], key: str, default: int | None = None) -> int:
    if key not in section:
        if default is None:
            raise ValueError(f"missing field {key!r}")
        return default
    try:
        return int(section[key])
    except ValueError as exc:
        raise ValueError(f"field {key!r} must be a decimal integer") from exc


def _matrix(text: str, p: int, n: int) -> Mat2:
    values = _ints(text)
    if len(values) != 4:
        raise ValueError("a matrix record has four entries")
    return Mat2.of(p, n, *values)


def _prime(section: Mapping[str, str]) -> TrivialPrime:
    p = _int(section, "p")
    if "ell" in section:
        return TrivialPrime(p, _int(section, "ell"))
    return TrivialPrime.least(p)


def _matrix_text(m: Mat2) -> str:
    return " ".join(str(e) for e in m.entries)


def deformation_from_section(section: Mapping[str, str]) -> TameDeformation:
    prime = _prime(section)
    n = _int(section, "n")
    k = _int(section, "k", 2)
    return TameDeformation(
        prime, n, _matrix(section["sigma"], prime.p, n), _matrix(section["tau"], prime.p, n), k
    )


def deformation_to_section(d: TameDeformation) -> dict[str, str]:
    return {
        "p": str(d.p),
        "ell": str(d.ell),
        "n": str(d.n),
        "k": str(d.k),
        "sigma": _matrix_text(d.sigma),
        "tau": _matrix_text(d.tau),
    }


def action_from_section(section: Mapping[str, str]) -> LocalLatticeAction:
    prime = _prime(section)
    n = _int(section, "n")
    return LocalLatticeAction(
        prime,
        n,
        _matrix(section["s_sigma"], prime.p, n),
        _matrix(section["s_tau"], prime.p, n),
        _int(section, "psi_sigma", 1),
        _int(section, "psi_tau", 1),
    )


def action_to_section(act: LocalLatticeAction) -> dict[str, str]:
    return {
        "p": str(act.p),
        "ell": str(act.prime.ell),
        "n": str(act.n),
        "s_sigma": _matrix_text(act.s_sigma),
        "s_tau": _matrix_text(act.s_tau),
        "psi_sigma": str(act.psi_sigma),
        "psi_tau": str(act.psi_tau),
    }


def series_from_section(section: Mapping[str, str]) -> LambdaSeries:
    p, big_n, d = _int(section, "p"), _int(section, "N"), _int(section, "D")
    coeffs = _ints(section["coeffs"])
    if len(coeffs) > d + 1:
        raise ValueError("more coefficients than the T-truncation allows")
    return LambdaSeries.of(p, big_n, d, coeffs)


def series_to_section(f: LambdaSeries) -> dict[str, str]:
    return {"p": str(f.p), "N": str(f.N), "D": str(f.D), "coeffs": " ".join(map(str, f.coeffs))}


def module_from_section(section: Mapping[str, str]) -> ElementaryModule:
    """Fields p, r, mu (list), polys (';'-separated lists of lower coefficients)."""
    p = _int(section, "p")
    big_n = _int(section, "N", 6)
    polys = []
    for chunk in section.get("polys", "").split(";"):
        if chunk.strip():
            polys.append(DistinguishedPoly.of(p, big_n, _ints(chunk)))
    return ElementaryModule(p, _int(section, "r", 0), tuple(_ints(section.get("mu", ""))), tuple(polys))


def cocycle_to_text(f: AdCocycle) -> str:
    return f.digits()


def cocycle_from_text(p: int, text: str) -> AdCocycle:
    return AdCocycle.from_digits(p, text)


def read_config(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep N and D distinct from n and d
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except (OSError, configparser.Error) as exc:
        raise ValueError(f"cannot read config {path}: {exc}") from exc
    return parser


def write_sections(sections: Mapping[str, Mapping[str, str]]) -> str:
    parser = configparser.ConfigParser()
    parser.optionxform = str
    for name, body in sections.items():
        parser[name] = dict(body)
    out = StringIO()
    parser.write(out)
    return out.getvalue()
