"""Canonical technique inventory and the alias table for variant names."""

from __future__ import annotations

# The 14 label strings, exactly as they appear in annotation files. Order
# matters: per-class reports and tie-breaks follow this sequence.
TECHNIQUES: tuple[str, ...] = (
    "Loaded_Language",
    "Name_Calling,Labeling",
    "Repetition",
    "Exaggeration,Minimisation",
    "Doubt",
    "Appeal_to_fear-prejudice",
    "Flag-Waving",
    "Causal_Oversimplification",
    "Slogans",
    "Appeal_to_Authority",
    "Black-and-White_Fallacy",
    "Thought-terminating_Cliches",
    "Whataboutism,Straw_Men,Red_Herring",
    "Bandwagon,Reductio_ad_hitlerum",
)

TECHNIQUE_INDEX: dict[str, int] = {name: i for i, name in enumerate(TECHNIQUES)}

# Pre-merge and variant spellings seen in the wild. Values must be canonical.
_DEFAULT_ALIASES: dict[str, str] = {
    "Name_Calling": "Name_Calling,Labeling",
    "Labeling": "Name_Calling,Labeling",
    "Exaggeration": "Exaggeration,Minimisation",
    "Minimisation": "Exaggeration,Minimisation",
    "Minimization": "Exaggeration,Minimisation",
    "Exaggeration,Minimization": "Exaggeration,Minimisation",
    "Whataboutism": "Whataboutism,Straw_Men,Red_Herring",
    "Straw_Men": "Whataboutism,Straw_Men,Red_Herring",
    "Red_Herring": "Whataboutism,Straw_Men,Red_Herring",
    "Bandwagon": "Bandwagon,Reductio_ad_hitlerum",
    "Reductio_ad_hitlerum": "Bandwagon,Reductio_ad_hitlerum",
    "Thought-terminating_Clichés": "Thought-terminating_Cliches",
}

_aliases: dict[str, str] = dict(_DEFAULT_ALIASES)


def register_alias(alias: str, canonical: str) -> None:
    """Map an extra variant spelling onto a canonical technique name."""
    if canonical not in TECHNIQUE_INDEX:
        raise ValueError(f"not a canonical technique: {canonical!r}")
    if alias in TECHNIQUE_INDEX:
        raise ValueError(f"cannot shadow canonical name {alias!r}")
    _aliases[alias] = canonical


def reset_aliases() -> None:
    _aliases.clear()
    _aliases.update(_DEFAULT_ALIASES)


def canonical_technique(name: str) -> str:
    """Resolve a label to its canonical form.

    Exact canonical names pass through; known aliases are rewritten;
    anything else raises ValueError.
    """
    if name in TECHNIQUE_INDEX:
        return name
    mapped = _aliases.get(name)
    if mapped is not None:
        return mapped
    raise ValueError(f"unknown technique: {name!r}")
