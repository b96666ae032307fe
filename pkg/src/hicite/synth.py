"""Seeded synthetic corpora with cumulative-advantage citation dynamics.

Generation grows a single publication cohort and hands out a fixed number
of citations per year, one at a time; each citation attaches to publication
i with probability proportional to (c_i + advantage_offset) * aging(d),
where c_i is the running count. Allocation is strictly sequential so early
citations feed back into later draw weights, which is what makes an early
pulse self-reinforcing. Repeat runs with the same seed and config yield the
identical corpus.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .corpus import _CATEGORY_FORBIDDEN, CitationEvent, Corpus, Journal, Publication, build_corpus
from .errors import ConfigError

KERNEL_FAST = "fast"
KERNEL_SLOW = "slow"
KERNEL_FLAT = "flat"
KERNEL_KINDS = (KERNEL_FAST, KERNEL_SLOW, KERNEL_FLAT)

SLOW_PEAK_RANGE = (3, 6)

PRESET_FAST_PHYSICS = "fast_physics_like"
PRESET_SLOW_MATH = "slow_math_like"
PRESET_NAMES = (PRESET_FAST_PHYSICS, PRESET_SLOW_MATH)

CONFIG_FILE = "synth_config.json"

# Sanity caps so a typo in a config cannot ask for an absurd generation run.
MAX_PUBLICATIONS = 1_000_000
MAX_JOURNALS = 50_000
MAX_TOTAL_CITATIONS = 5_000_000
MAX_OFFSET_NUMERATOR = 1_000


@dataclass(frozen=True)
class AgingKernel:
    """Per-offset citation propensity shape.

    fast peaks at offset 1 and decays geometrically; slow rises linearly to
    a configurable peak in 3..6 and then decays geometrically; flat is
    uniform. All weights are positive rationals.
    """

    kind: str
    decay: Fraction | None = None
    peak_offset: int | None = None

    def weights(self, n_years: int) -> tuple[Fraction, ...]:
        if self.kind == KERNEL_FLAT:
            return (Fraction(1),) * n_years
        if self.kind == KERNEL_FAST:
            return tuple(
                self.decay if offset == 0 else self.decay ** (offset - 1) for offset in range(n_years)
            )
        out = []
        for offset in range(n_years):
            if offset <= self.peak_offset:
                out.append(Fraction(offset + 1, self.peak_offset + 1))
            else:
                out.append(self.decay ** (offset - self.peak_offset))
        return tuple(out)


@dataclass(frozen=True)
class LayoutCell:
    """One partition cell of the generated corpus: its category set plus
    how many journals and publications it gets."""

    categories: frozenset[str]
    journals: int
    publications: int


@dataclass(frozen=True)
class SynthConfig:
    seed: int
    n_publications: int
    n_journals: int
    category_layout: tuple[LayoutCell, ...]
    pub_year: int
    n_years: int
    citations_per_year: tuple[int, ...]
    aging: AgingKernel
    advantage_offset: Fraction = Fraction(1)


def _kernel_problems(kernel: AgingKernel) -> list[str]:
    problems = []
    if kernel.kind not in KERNEL_KINDS:
        return [f"aging.kind: unknown kernel {kernel.kind!r} (expected one of {KERNEL_KINDS})"]
    if kernel.kind == KERNEL_FLAT:
        if kernel.decay is not None or kernel.peak_offset is not None:
            problems.append("aging: flat kernel takes no parameters")
        return problems
    if kernel.decay is None or not 0 < kernel.decay < 1:
        problems.append(f"aging.decay: must be a rational in (0, 1), got {kernel.decay}")
    if kernel.kind == KERNEL_FAST and kernel.peak_offset is not None:
        problems.append("aging.peak_offset: fast kernel has a fixed peak at offset 1")
    if kernel.kind == KERNEL_SLOW:
        lo, hi = SLOW_PEAK_RANGE
        if kernel.peak_offset is None or not lo <= kernel.peak_offset <= hi:
            problems.append(f"aging.peak_offset: must be in {lo}..{hi}, got {kernel.peak_offset}")
    return problems


def validate_config(config: SynthConfig) -> None:
    """Raise ConfigError with one message per offending field."""
    problems = []
    if not isinstance(config.seed, int) or not 0 <= config.seed < 2**64:
        problems.append(f"seed: must be an unsigned 64-bit integer, got {config.seed!r}")
    if config.n_publications < 1 or config.n_publications > MAX_PUBLICATIONS:
        problems.append(f"n_publications: must be in 1..{MAX_PUBLICATIONS}, got {config.n_publications}")
    if config.n_journals < 1 or config.n_journals > MAX_JOURNALS:
        problems.append(f"n_journals: must be in 1..{MAX_JOURNALS}, got {config.n_journals}")

    if not config.category_layout:
        problems.append("category_layout: must list at least one cell")
    seen_sets = set()
    for index, cell in enumerate(config.category_layout):
        where = f"category_layout[{index}]"
        if not cell.categories:
            problems.append(f"{where}.categories: empty category set")
        for name in cell.categories:
            if not name or name != name.strip() or any(ch in name for ch in _CATEGORY_FORBIDDEN):
                problems.append(f"{where}.categories: invalid category name {name!r}")
        if cell.categories in seen_sets:
            problems.append(f"{where}.categories: duplicate category set")
        seen_sets.add(cell.categories)
        if cell.journals < 1:
            problems.append(f"{where}.journals: must be >= 1, got {cell.journals}")
        if cell.publications < 0:
            problems.append(f"{where}.publications: must be >= 0, got {cell.publications}")
    if config.category_layout:
        pub_sum = sum(cell.publications for cell in config.category_layout)
        journal_sum = sum(cell.journals for cell in config.category_layout)
        if pub_sum != config.n_publications:
            problems.append(
                f"category_layout: publication counts sum to {pub_sum}, expected n_publications={config.n_publications}"
            )
        if journal_sum != config.n_journals:
            problems.append(
                f"category_layout: journal counts sum to {journal_sum}, expected n_journals={config.n_journals}"
            )

    if config.n_years < 1:
        problems.append(f"n_years: must be >= 1, got {config.n_years}")
    if len(config.citations_per_year) != config.n_years:
        problems.append(
            f"citations_per_year: expected {config.n_years} entries, got {len(config.citations_per_year)}"
        )
    for offset, volume in enumerate(config.citations_per_year):
        if volume < 0:
            problems.append(f"citations_per_year[{offset}]: must be >= 0, got {volume}")
    if sum(max(v, 0) for v in config.citations_per_year) > MAX_TOTAL_CITATIONS:
        problems.append(f"citations_per_year: total exceeds {MAX_TOTAL_CITATIONS}")

    problems.extend(_kernel_problems(config.aging))

    if config.advantage_offset <= 0:
        problems.append(f"advantage_offset: must be positive, got {config.advantage_offset}")
    elif config.advantage_offset.numerator > MAX_OFFSET_NUMERATOR:
        problems.append(
            f"advantage_offset: numerator above {MAX_OFFSET_NUMERATOR} is beyond sampling capacity"
        )

    if problems:
        raise ConfigError(problems)


def generate_corpus(config: SynthConfig) -> Corpus:
    """Generate the corpus a config describes; deterministic in (seed, config)."""
    validate_config(config)

    journals: list[Journal] = []
    publications: list[Publication] = []
    for cell in config.category_layout:
        cell_journals = [
            Journal(id=f"J{len(journals) + i:04d}", categories=cell.categories)
            for i in range(cell.journals)
        ]
        for i in range(cell.publications):
            publications.append(
                Publication(
                    id=f"P{len(publications):06d}",
                    journal_id=cell_journals[i % len(cell_journals)].id,
                    pub_year=config.pub_year,
                )
            )
        journals.extend(cell_journals)

    # Attachment pool: publication i appears p times up front and gains q
    # copies per citation, so a uniform draw from the pool lands on i with
    # probability proportional to c_i + p/q. The aging factor scales every
    # weight identically within a year (single cohort) and cancels from the
    # draw; it shapes the presets' per-year volumes instead.
    p = config.advantage_offset.numerator
    q = config.advantage_offset.denominator
    pool: list[int] = []
    for i in range(len(publications)):
        pool.extend([i] * p)

    rng = random.Random(config.seed)
    events: list[CitationEvent] = []
    for offset, volume in enumerate(config.citations_per_year):
        year = config.pub_year + offset
        for _ in range(volume):
            winner = pool[rng.randrange(len(pool))]
            events.append(CitationEvent(publications[winner].id, year))
            pool.extend([winner] * q)

    return build_corpus(publications, journals, events)


def volume_profile(weights: Sequence[Fraction], total: int) -> tuple[int, ...]:
    """Split `total` citations into per-offset integers proportional to
    `weights`, by largest remainder; always sums to exactly `total`."""
    if total < 0:
        raise ValueError(f"total must be >= 0, got {total}")
    if not weights or any(w <= 0 for w in weights):
        raise ValueError("weights must be non-empty and positive")
    scale = Fraction(total) / sum(weights)
    exact = [w * scale for w in weights]
    counts = [int(e) for e in exact]
    remainders = sorted(range(len(weights)), key=lambda d: (counts[d] - exact[d], d))
    for d in remainders[: total - sum(counts)]:
        counts[d] += 1
    return tuple(counts)


# Preset cohorts mirror two domains with different citation speed: a fast
# one (astronomy/particle-physics journal cells) and a slow one (pure and
# applied mathematics cells). Cell sizes are the real article counts of
# those six cells; per-year volumes are arbitrary smooth totals shaped by
# each kernel, and both presets share the same total so cross-domain runs
# differ only in timing profile and cell structure.
_PRESET_LAYOUTS = {
    PRESET_FAST_PHYSICS: (
        (("Astronomy Astrophysics",), 40, 8047),
        (("Physics Particles Fields",), 12, 1977),
        (("Astronomy Astrophysics", "Physics Particles Fields"), 15, 2440),
    ),
    PRESET_SLOW_MATH: (
        (("Mathematics",), 48, 10022),
        (("Mathematics Applied",), 22, 3938),
        (("Mathematics", "Mathematics Applied"), 18, 3286),
    ),
}
_PRESET_KERNELS = {
    PRESET_FAST_PHYSICS: AgingKernel(KERNEL_FAST, decay=Fraction(5, 8)),
    PRESET_SLOW_MATH: AgingKernel(KERNEL_SLOW, decay=Fraction(4, 5), peak_offset=4),
}
PRESET_PUB_YEAR = 2004
PRESET_N_YEARS = 8
PRESET_TOTAL_CITATIONS = 160_000
PRESET_DEFAULT_SEED = 42


def _scaled(value: int, divisor: int) -> int:
    return max(1, round(Fraction(value, divisor)))


def preset(name: str, divisor: int = 1, seed: int = PRESET_DEFAULT_SEED) -> SynthConfig:
    """A ready-made config for one of the named domain presets.

    `divisor` scales publication, journal, and citation counts down by an
    integer factor for desk-scale runs (rounding to nearest, minimum 1).
    """
    if name not in _PRESET_LAYOUTS:
        raise ConfigError([f"unknown preset {name!r} (expected one of {PRESET_NAMES})"])
    if divisor < 1:
        raise ConfigError([f"divisor: must be >= 1, got {divisor}"])
    layout = tuple(
        LayoutCell(
            categories=frozenset(categories),
            journals=_scaled(journals, divisor),
            publications=_scaled(publications, divisor),
        )
        for categories, journals, publications in _PRESET_LAYOUTS[name]
    )
    kernel = _PRESET_KERNELS[name]
    volumes = volume_profile(kernel.weights(PRESET_N_YEARS), _scaled(PRESET_TOTAL_CITATIONS, divisor))
    config = SynthConfig(
        seed=seed,
        n_publications=sum(cell.publications for cell in layout),
        n_journals=sum(cell.journals for cell in layout),
        category_layout=layout,
        pub_year=PRESET_PUB_YEAR,
        n_years=PRESET_N_YEARS,
        citations_per_year=volumes,
        aging=kernel,
        advantage_offset=Fraction(1),
    )
    validate_config(config)
    return config


def with_seed(config: SynthConfig, seed: int) -> SynthConfig:
    return replace(config, seed=seed)


def config_to_dict(config: SynthConfig) -> dict:
    aging: dict = {"kind": config.aging.kind}
    if config.aging.decay is not None:
        aging["decay"] = str(config.aging.decay)
    if config.aging.peak_offset is not None:
        aging["peak_offset"] = config.aging.peak_offset
    return {
        "seed": config.seed,
        "n_publications": config.n_publications,
        "n_journals": config.n_journals,
        "category_layout": [
            {
                "categories": sorted(cell.categories),
                "journals": cell.journals,
                "publications": cell.publications,
            }
            for cell in config.category_layout
        ],
        "pub_year": config.pub_year,
        "n_years": config.n_years,
        "citations_per_year": list(config.citations_per_year),
        "aging": aging,
        "advantage_offset": str(config.advantage_offset),
    }


def config_from_dict(data: dict) -> SynthConfig:
    """Parse and validate a config document; ConfigError lists every problem."""
    problems = []

    def need(key, kind, caster=None):
        if key not in data:
            problems.append(f"{key}: missing")
            return None
        value = data[key]
        if kind is int and isinstance(value, bool):
            problems.append(f"{key}: expected an integer, got {value!r}")
            return None
        if not isinstance(value, kind):
            problems.append(f"{key}: expected {kind.__name__}, got {type(value).__name__}")
            return None
        if caster is not None:
            try:
                return caster(value)
            except (ValueError, ZeroDivisionError):
                problems.append(f"{key}: cannot parse {value!r}")
                return None
        return value

    seed = need("seed", int)
    n_publications = need("n_publications", int)
    n_journals = need("n_journals", int)
    pub_year = need("pub_year", int)
    n_years = need("n_years", int)
    layout_raw = need("category_layout", list)
    volumes_raw = need("citations_per_year", list)
    aging_raw = need("aging", dict)
    offset = need("advantage_offset", str, Fraction)

    unknown = sorted(set(data) - {
        "seed", "n_publications", "n_journals", "category_layout", "pub_year",
        "n_years", "citations_per_year", "aging", "advantage_offset",
    })
    for key in unknown:
        problems.append(f"{key}: unknown field")

    layout = []
    for index, entry in enumerate(layout_raw or []):
        where = f"category_layout[{index}]"
        if not isinstance(entry, dict):
            problems.append(f"{where}: expected an object")
            continue
        categories = entry.get("categories")
        journals = entry.get("journals")
        publications = entry.get("publications")
        if not isinstance(categories, list) or not all(isinstance(c, str) for c in categories):
            problems.append(f"{where}.categories: expected a list of strings")
            continue
        if not isinstance(journals, int) or not isinstance(publications, int):
            problems.append(f"{where}: journals and publications must be integers")
            continue
        layout.append(LayoutCell(frozenset(categories), journals, publications))

    volumes = []
    for index, entry in enumerate(volumes_raw or []):
        if not isinstance(entry, int) or isinstance(entry, bool):
            problems.append(f"citations_per_year[{index}]: expected an integer, got {entry!r}")
        else:
            volumes.append(entry)

    kernel = None
    if aging_raw is not None:
        kind = aging_raw.get("kind")
        if not isinstance(kind, str):
            problems.append("aging.kind: missing or not a string")
        else:
            decay = aging_raw.get("decay")
            peak = aging_raw.get("peak_offset")
            try:
                decay_value = Fraction(decay) if decay is not None else None
            except (ValueError, TypeError, ZeroDivisionError):
                problems.append(f"aging.decay: cannot parse {decay!r}")
                decay_value = None
            if peak is not None and not isinstance(peak, int):
                problems.append(f"aging.peak_offset: expected an integer, got {peak!r}")
                peak = None
            kernel = AgingKernel(kind=kind, decay=decay_value, peak_offset=peak)

    if problems:
        raise ConfigError(problems)

    config = SynthConfig(
        seed=seed,
        n_publications=n_publications,
        n_journals=n_journals,
        category_layout=tuple(layout),
        pub_year=pub_year,
        n_years=n_years,
        citations_per_year=tuple(volumes),
        aging=kernel,
        advantage_offset=offset,
    )
    validate_config(config)
    return config


def save_config(config: SynthConfig, path: str | Path) -> None:
    text = json.dumps(config_to_dict(config), indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def load_config(path: str | Path) -> SynthConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise ConfigError([f"config file is not valid JSON: {err}"]) from None
    if not isinstance(data, dict):
        raise ConfigError(["config file must hold a JSON object"])
    return config_from_dict(data)
