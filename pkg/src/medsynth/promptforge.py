"""Compile a data profile, rules and optional seed rows into a generation prompt.

Four tiers trade disclosure for guidance:

* ``SeedEx``    header row, a handful of real seed rows, a format directive
* ``FeatDesc``  per-feature definitions from the schema
* ``StatGuide`` definitions plus moments, ranges, frequencies, correlations
* ``ClinRule``  metadata plus explicit rules and correlations, never rows
"""

import json
import re
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

import numpy as np

from .dataprofile import OTHER
from .exceptions import TemplateError
from .table import format_number

DEFAULT_TASK = "diabetes prediction"
MAX_SEEDS = 5


class TemplateTier(str, Enum):
    SEEDEX = "SeedEx"
    FEATDESC = "FeatDesc"
    STATGUIDE = "StatGuide"
    CLINRULE = "ClinRule"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for tier in cls:
            if tier.value.lower() == str(value).strip().lower():
                return tier
        raise ValueError(f"unknown template tier {value!r}; expected one of {[t.value for t in cls]}")


# Whether the pipeline samples seed rows for a tier.  ClinRule can never take them.
DEFAULT_INCLUDE_SEEDS = {
    TemplateTier.SEEDEX: True,
    TemplateTier.FEATDESC: True,
    TemplateTier.STATGUIDE: True,
    TemplateTier.CLINRULE: False,
}

SYSTEM_TEMPLATE = (
    "Generate exactly {k} patient records as newline-delimited records: one JSON object "
    "or one comma-separated row per line, using only the fields listed by the user. "
    "Do not include any explanation, commentary, numbering or code fences. "
    "Do not emit protected health information such as names, addresses, contact "
    "details, dates of birth or record identifiers. "
    "Adhere strictly to the schema and guidelines provided."
)

_SECTIONS = {
    "intro_structure": "Generate realistic synthetic patient records for {task} using the following structure.",
    "intro": "Generate realistic synthetic patient records for {task}.",
    "header": "{header}",
    "features": "Features:\n{feature_definitions}",
    "stats": "Feature Metadata:\n{feature_stats}",
    "seeds": "Example records:\n{seed_rows}",
    "constraints": "Maintain the following correlations:\n{constraint_list}",
    "layout": "Each record must follow:\n{header}",
    "repeat": "Repeat the format exactly and output exactly {k} rows.",
    "count": "Output exactly {k} rows, one record per line, with fields in the order above.",
}

_TIER_SECTIONS = {
    TemplateTier.SEEDEX: ("intro_structure", "header", "seeds", "repeat"),
    TemplateTier.FEATDESC: ("intro", "features", "seeds", "layout", "count"),
    TemplateTier.STATGUIDE: ("intro", "features", "stats", "seeds", "layout", "count"),
    TemplateTier.CLINRULE: ("intro", "stats", "constraints", "layout", "count"),
}

_TAG = re.compile(r"\{([A-Za-z_][A-Za-z0-9_]*)\}")


def render_template(template, values, log=None):
    """Substitute ``{tag}`` placeholders in one pass.

    Substituted text is not rescanned, so values may contain braces.  A tag
    without a value raises :class:`TemplateError` naming it.
    """
    def sub(match):
        tag = match.group(1)
        if tag not in values:
            raise TemplateError(tag)
        text = str(values[tag])
        if log is not None:
            log[tag] = text
        return text

    return _TAG.sub(sub, template)


@dataclass(frozen=True)
class PromptSpec:
    tier: TemplateTier
    system_message: str
    user_message: str
    k: int
    seeds: tuple = ()
    placeholder_log: dict = field(default_factory=dict)
    system_template: str = field(default=SYSTEM_TEMPLATE, repr=False)
    user_template: str = field(default="", repr=False)

    def with_count(self, k):
        """The same prompt asking for ``k`` records instead."""
        values = dict(self.placeholder_log, k=str(k))
        log = {}
        system = render_template(self.system_template, values, log)
        user = render_template(self.user_template, values, log)
        return replace(self, system_message=system, user_message=user, k=k, placeholder_log=log)

    def messages(self):
        return [
            {"role": "system", "content": self.system_message},
            {"role": "user", "content": self.user_message},
        ]

    def to_dict(self):
        return {"tier": self.tier.value, "system": self.system_message,
                "user": self.user_message, "k": self.k}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self):
        return (f"# tier: {self.tier.value}\n# k: {self.k}\n\n"
                f"[system]\n{self.system_message}\n\n[user]\n{self.user_message}\n")


def sample_seeds(table, n, seed=0):
    """Up to five real rows, sampled uniformly without replacement, as CSV lines.

    Rows come back in their original table order so a fixed seed always
    yields the same text.
    """
    if n < 0 or n > MAX_SEEDS:
        raise ValueError(f"seed count must be in [0, {MAX_SEEDS}], got {n}")
    if n > table.n_rows:
        raise ValueError(f"cannot sample {n} seed rows from {table.n_rows}")
    if n == 0:
        return []
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(table.n_rows, size=n, replace=False))
    rows = table.row_strings()
    return [rows[i] for i in idx]


def percent(p):
    """Integer percentage, ties rounded half-up."""
    return int((Decimal(repr(float(p))) * 100).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def _range_text(lo, hi):
    return f"{format_number(lo)}-{format_number(hi)}"


def _category_label(column, token):
    if column.kind == "binary":
        return {"0": "No", "1": "Yes"}.get(token, token)
    return token


def _surfaced_categories(cat_profile):
    return [c for c in cat_profile.pmf if not (c == OTHER and cat_profile.other_bucket)]


def feature_definitions(profile):
    lines = []
    for i, col in enumerate(profile.schema, start=1):
        desc = col.description or col.name
        if col.kind == "numeric":
            if col.bounds is not None:
                lo, hi = col.bounds
            else:
                num = profile.numeric[col.name]
                lo, hi = num.min, num.max
            hint = f"{'Int' if col.integer else 'Float'}: {_range_text(lo, hi)}"
        elif col.kind == "binary":
            hint = "0: No, 1: Yes"
        else:
            hint = "/".join(_surfaced_categories(profile.categorical[col.name]))
        lines.append(f"{i}. {col.name}: {desc} ({hint})")
    return "\n".join(lines)


def feature_stats(profile, with_correlations):
    partners = {}
    if with_correlations:
        for f, g, rho in profile.correlations.entries:
            partners.setdefault(f, []).append(f"{g} (r={rho:+.2f})")
    lines = []
    for col in profile.schema:
        if col.kind == "numeric":
            num = profile.numeric[col.name]
            line = (f"{col.name}: Mean: {num.mean:.1f}, Std: {num.std:.1f}, "
                    f"Range: {_range_text(num.min, num.max)}")
        else:
            pmf = profile.categorical[col.name].pmf
            freq = ", ".join(f"{_category_label(col, c)}: {percent(p)}" for c, p in pmf.items())
            line = f"{col.name}: {freq}"
        if col.name in partners:
            line += "; correlated with " + ", ".join(partners[col.name])
        lines.append(line)
    return "\n".join(lines)


def constraint_list(profile, rules):
    lines = []
    for f, g, rho in profile.correlations.entries:
        sign = "positively" if rho > 0 else "negatively"
        lines.append(f"- {f} and {g} are {sign} correlated (r={rho:+.2f})")
    for rule in rules:
        lines.append(f"- {rule.describe()}")
    return "\n".join(lines)


def build_prompt(tier, profile, rules=(), k=10, seeds=(), task=DEFAULT_TASK):
    """Render one tier's prompt.  Every substituted value comes from ``profile``
    or ``rules``; the only row-level text is the explicit ``seeds``.
    """
    tier = TemplateTier.parse(tier)
    seeds = tuple(seeds)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if len(seeds) > MAX_SEEDS:
        raise ValueError(f"at most {MAX_SEEDS} seed rows, got {len(seeds)}")
    if tier is TemplateTier.CLINRULE:
        if seeds:
            raise ValueError("ClinRule prompts cannot carry seed rows")
        if not len(rules):
            raise ValueError("ClinRule prompts need at least one rule")

    sections = [s for s in _TIER_SECTIONS[tier] if s != "seeds" or seeds]
    user_template = "\n\n".join(_SECTIONS[s] for s in sections)

    values = {"k": str(k), "task": task, "header": ", ".join(c.name for c in profile.schema)}
    if "features" in sections:
        values["feature_definitions"] = feature_definitions(profile)
    if "stats" in sections:
        values["feature_stats"] = feature_stats(profile, with_correlations=tier is TemplateTier.STATGUIDE)
    if "seeds" in sections:
        values["seed_rows"] = "\n".join(seeds)
    if "constraints" in sections:
        values["constraint_list"] = constraint_list(profile, rules)

    log = {}
    system = render_template(SYSTEM_TEMPLATE, values, log)
    user = render_template(user_template, values, log)
    return PromptSpec(tier=tier, system_message=system, user_message=user, k=k, seeds=seeds,
                      placeholder_log=log, system_template=SYSTEM_TEMPLATE,
                      user_template=user_template)
