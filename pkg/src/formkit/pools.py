"""Content pools feeding the synthetic form generator.

Pools are file-backed (plain newline-delimited UTF-8; the label-value
file is tab-separated) with small built-in seed content: the label pool
starts with "Name:", "Location:", "Details:" and the label-value pool
with 60 "Date: X" pairs spanning six date formats.  Labels containing
digits are down-sampled to a small fraction of the pool.
"""

from __future__ import annotations

import datetime
import math
from dataclasses import dataclass, field
from pathlib import Path

from .rng import SplitMix64

SEED_LABELS = ("Name:", "Location:", "Details:")

DATE_FORMATS = (
    "{d} {mon} {Y}",       # 23 Mar 1999
    "{m:02d}/{d:02d}/{Y}",  # 03/23/1999
    "{Y}-{m:02d}-{d:02d}",  # 1999-03-23
    "{month} {d}, {Y}",     # March 23, 1999
    "{d:02d}/{m:02d}/{y:02d}",  # 23/03/99
    "{mon} {d} {Y}",        # Mar 23 1999
)

# ranks.nl default English stop word list
STOP_WORDS = frozenset(
    """a about above after again against all am an and any are aren't as at be
because been before being below between both but by can't cannot could
couldn't did didn't do does doesn't doing don't down during each few for from
further had hadn't has hasn't have haven't having he he'd he'll he's her here
here's hers herself him himself his how how's i i'd i'll i'm i've if in into
is isn't it it's its itself let's me more most mustn't my myself no nor not of
off on once only or other ought our ours ourselves out over own same shan't
she she'd she'll she's should shouldn't so some such than that that's the
their theirs them themselves then there there's these they they'd they'll
they're they've this those through to too under until up very was wasn't we
we'd we'll we're we've were weren't what what's when when's where where's
which while who who's whom why why's with won't would wouldn't you you'd
you'll you're you've your yours yourself yourselves""".split()
)

DEFAULT_WORDS = (
    "account action address agency agreement amount analysis application approval "
    "area authority balance benefit board branch budget building business capital "
    "category certificate change charge city claim client code comment committee "
    "company completion condition contact contract control copy cost country county "
    "coverage credit customer date day decision degree department deposit description "
    "detail development director district division document dollar duration duty "
    "education effect employee employer equipment estimate evaluation event exchange "
    "expense experience facility factor family federal fee field file firm fiscal "
    "food formula fund goods grade grant group growth health history holder hour "
    "house identity income individual industry information institution insurance "
    "interest inventory investment invoice issue item journal kind labor language "
    "leave length letter level license limit line list loan location machine mail "
    "management manager manufacturer margin market material measure medical meeting "
    "member memo method mileage model month name nature network notice number office "
    "officer operation order origin owner package page parcel parent part payment "
    "penalty percent period permit person phone plan policy population position "
    "premium price procedure process product profit program project property purchase "
    "quality quantity quarter rate reason receipt record reference region register "
    "release rent report request research reserve resident resource result return "
    "revenue review risk salary sale sample schedule school season section sector "
    "security series service share signature site source staff standard state "
    "statement station status stock street student subject summary supply surface "
    "system tax term territory title total town trade training transfer transport "
    "type unit usage use value vehicle vendor volume wage warehouse week weight "
    "worker year zone"
).split()

DEFAULT_TITLES = (
    "Application Form",
    "Registration Record",
    "Annual Report Summary",
    "Purchase Order",
    "Inventory Sheet",
    "Employee Information",
    "Insurance Claim",
    "Shipping Manifest",
    "Account Statement",
    "Inspection Checklist",
    "Membership Enrollment",
    "Expense Report",
    "Maintenance Request",
    "Customer Survey",
    "Tax Worksheet",
    "Medical History",
)

MONTHS = (
    "January", "February", "March", "April", "May", "June", "July",
    "August", "September", "October", "November", "December",
)


def _format_date(fmt: str, date: datetime.date) -> str:
    return fmt.format(
        d=date.day,
        m=date.month,
        Y=date.year,
        y=date.year % 100,
        mon=MONTHS[date.month - 1][:3],
        month=MONTHS[date.month - 1],
    )


def seed_date_pairs() -> list[tuple[str, str]]:
    """60 "Date: X" pairs, 10 per format, from a fixed-seed stream."""
    rng = SplitMix64(0xDA7E5EED)
    pairs = []
    for fmt in DATE_FORMATS:
        for _ in range(10):
            date = datetime.date(rng.randint(1940, 2020), rng.randint(1, 12), rng.randint(1, 28))
            pairs.append(("Date:", _format_date(fmt, date)))
    return pairs


class FormatError(ValueError):
    pass


@dataclass
class ContentPools:
    labels: list[str] = field(default_factory=lambda: list(SEED_LABELS))
    label_value_pairs: list[tuple[str, str]] = field(default_factory=seed_date_pairs)
    titles: list[str] = field(default_factory=lambda: list(DEFAULT_TITLES))
    words: list[str] = field(default_factory=lambda: list(DEFAULT_WORDS))
    stop_words: frozenset[str] = STOP_WORDS
    numeric_label_cap: float = 0.002

    def non_stop_words(self) -> list[str]:
        return [w for w in self.words if w.lower() not in self.stop_words]


def _has_digit(s: str) -> bool:
    return any(c.isdigit() for c in s)


def _dedup(items):
    seen = set()
    out = []
    for it in items:
        if it not in seen:
            seen.add(it)
            out.append(it)
    return out


def _cap_numeric(labels: list[str], cap: float) -> list[str]:
    plain = [l for l in labels if not _has_digit(l)]
    numeric = [l for l in labels if _has_digit(l)]
    if cap >= 1.0 or not numeric:
        return labels
    allowed = math.floor(cap / (1.0 - cap) * len(plain))
    return plain + numeric[:allowed]


def _read_lines(path: Path) -> list[str]:
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise IOError(f"cannot read {path}: {e}") from e
    return [line for line in raw.splitlines() if line.strip()]


def load_pools(path: str | Path, numeric_label_cap: float = 0.002) -> ContentPools:
    """Load pools from a directory; missing files fall back to seed content.

    Expected files: labels.txt, label_values.txt (tab-separated),
    titles.txt, words.txt, stop_words.txt.
    """
    root = Path(path)
    if not root.is_dir():
        raise IOError(f"pool directory not found: {root}")
    pools = ContentPools(numeric_label_cap=numeric_label_cap)

    f = root / "labels.txt"
    if f.exists():
        labels = _dedup(list(SEED_LABELS) + _read_lines(f))
        pools.labels = _cap_numeric(labels, numeric_label_cap)

    f = root / "label_values.txt"
    if f.exists():
        pairs = list(seed_date_pairs())
        for lineno, line in enumerate(_read_lines(f), 1):
            if "\t" not in line:
                raise FormatError(f"{f}:{lineno}: expected TAB-separated label/value")
            label, value = line.split("\t", 1)
            pairs.append((label, value))
        pools.label_value_pairs = _dedup(pairs)

    f = root / "titles.txt"
    if f.exists():
        pools.titles = _dedup(_read_lines(f)) or list(DEFAULT_TITLES)

    f = root / "words.txt"
    if f.exists():
        pools.words = _dedup(_read_lines(f)) or list(DEFAULT_WORDS)

    f = root / "stop_words.txt"
    if f.exists():
        pools.stop_words = frozenset(w.lower() for w in _read_lines(f)) or STOP_WORDS

    return pools
