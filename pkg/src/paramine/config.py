"""Pipeline configuration: deprel mapping, pronoun list, thresholds.

The config file is INI-style with three sections. [relations] maps a
dependency relation label to one of subject / object / pp / modifier /
ignore ("pp" derives the final label from the dependent's case marker).
[pronouns] holds the closed-class pronoun list. [pipeline] holds scalar
knobs. Any omitted key keeps its default. Lookup of a deprel tries the
exact label first, then its base before ":" (so obl:tmod falls back to
the obl entry).
"""

from __future__ import annotations

from configparser import ConfigParser
from dataclasses import dataclass, field, replace

SUBJECT = "subject"
OBJECT = "object"
MODIFIER = "modifier"
PP = "pp"
IGNORE = "ignore"

DEFAULT_RELATION_MAP: dict[str, str] = {
    "nsubj": SUBJECT,
    "nsubj:pass": OBJECT,   # passive surface subject is the logical object
    "obj": OBJECT,
    "dobj": OBJECT,
    "obl": PP,
    "obl:agent": SUBJECT,   # passive by-agent is the logical subject
    "nmod": PP,
    "advmod": MODIFIER,
    "advcl": MODIFIER,
    "aux": IGNORE,
    "cop": IGNORE,
}

DEFAULT_PRONOUNS = frozenset(
    """
    i me my mine myself we us our ours ourselves
    you your yours yourself yourselves
    he him his himself she her hers herself it its itself
    they them their theirs themselves
    this that these those such
    who whom whose which what
    there one anyone anybody anything everyone everybody everything
    someone somebody something no_one nobody nothing none
    """.split()
)

DEFAULT_OVERLAP_THRESHOLD = 100.0
DEFAULT_SEED = 42

MLE_PER_INSTANCE = "per-instance"
MLE_PER_RELATION = "per-relation"


@dataclass(frozen=True)
class PipelineConfig:
    relation_map: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_RELATION_MAP))
    pronoun_list: frozenset[str] = DEFAULT_PRONOUNS
    overlap_threshold: float = DEFAULT_OVERLAP_THRESHOLD
    log_base_note: str = "natural"
    mle_mode: str = MLE_PER_INSTANCE
    lp_min_freq: int = 1
    seed: int = DEFAULT_SEED
    skip_punct: bool = False

    def __post_init__(self):
        if self.overlap_threshold < 0:
            raise ValueError("overlap_threshold must be >= 0")
        if self.lp_min_freq < 1:
            raise ValueError("lp_min_freq must be >= 1")
        if self.mle_mode not in (MLE_PER_INSTANCE, MLE_PER_RELATION):
            raise ValueError(f"unknown mle_mode {self.mle_mode!r}")

    def map_deprel(self, deprel: str) -> str:
        """Resolve a dependency label to a relation kind, or IGNORE."""
        hit = self.relation_map.get(deprel)
        if hit is not None:
            return hit
        base = deprel.split(":", 1)[0]
        return self.relation_map.get(base, IGNORE)

    def with_overrides(self, **kwargs) -> "PipelineConfig":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs) if kwargs else self


def load_config(path: str) -> PipelineConfig:
    """Read a config file, layering its values over the defaults."""
    # ":" must not split keys: deprels like nsubj:pass appear as keys.
    parser = ConfigParser(delimiters=("=",), interpolation=None)
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh, source=path)

    relation_map = dict(DEFAULT_RELATION_MAP)
    if parser.has_section("relations"):
        for deprel, kind in parser.items("relations"):
            kind = kind.strip().lower()
            if kind not in (SUBJECT, OBJECT, MODIFIER, PP, IGNORE):
                raise ValueError(f"{path}: bad relation kind {kind!r} for {deprel!r}")
            relation_map[deprel] = kind

    pronouns = DEFAULT_PRONOUNS
    if parser.has_section("pronouns") and parser.has_option("pronouns", "words"):
        pronouns = frozenset(parser.get("pronouns", "words").split())

    kwargs = {}
    if parser.has_section("pipeline"):
        section = parser["pipeline"]
        if "overlap_threshold" in section:
            kwargs["overlap_threshold"] = section.getfloat("overlap_threshold")
        if "mle_mode" in section:
            kwargs["mle_mode"] = section.get("mle_mode").strip()
        if "lp_min_freq" in section:
            kwargs["lp_min_freq"] = section.getint("lp_min_freq")
        if "seed" in section:
            kwargs["seed"] = section.getint("seed")
        if "skip_punct" in section:
            kwargs["skip_punct"] = section.getboolean("skip_punct")

    return PipelineConfig(relation_map=relation_map, pronoun_list=pronouns, **kwargs)
