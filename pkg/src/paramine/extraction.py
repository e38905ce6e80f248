"""Verb instance extraction.

Every main verb in a sentence becomes one instance: the verb lemma plus a
map from relation label (subject, object, pp-<prep>, modifier) to the set
of extended-head fillers found among the verb's direct dependents.

Extended heads enrich a bare dependent head into a more specific unit:
noun-noun compound and fixed-expression parts are absorbed with
underscores, name parts and numbers with spaces, and an "of" complement
is rendered as "<head> of <complement>" with the complement's own
modifiers absorbed one level deep. Determiners and plain adjectives are
dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_PRONOUNS, IGNORE, MODIFIER, OBJECT, PP, SUBJECT, PipelineConfig
from .conllu import Sentence, Token

VERBAL_POS = ("VERB", "AUX")
EXCLUDED_VERB_DEPRELS = ("aux", "aux:pass", "cop", "amod")

# Dependents glued to their governor with "_" (fixed lexical units) vs.
# kept as separate space-joined words (names, numbers).
_UNDERSCORE_DEPS = ("compound", "fixed")
_SPACE_DEPS = ("flat", "nummod")


@dataclass(frozen=True)
class VerbInstance:
    verb: str
    sentence_id: str
    token_index: int
    components: dict[str, frozenset[str]] = field(default_factory=dict)
    pronoun_fillers: frozenset[str] = frozenset()

    def to_dict(self) -> dict:
        return {
            "sentence_id": self.sentence_id,
            "verb": self.verb,
            "token_index": self.token_index,
            "components": {rel: sorted(fillers) for rel, fillers in self.components.items()},
            "pronoun_fillers": sorted(self.pronoun_fillers),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "VerbInstance":
        return cls(
            verb=payload["verb"],
            sentence_id=payload["sentence_id"],
            token_index=payload["token_index"],
            components={
                rel: frozenset(fillers) for rel, fillers in payload["components"].items()
            },
            pronoun_fillers=frozenset(payload.get("pronoun_fillers", ())),
        )


def _base(deprel: str) -> str:
    return deprel.split(":", 1)[0]


def _case_lemma(token: Token, sentence: Sentence) -> str | None:
    """Lemma of the dependent's case marker, with fixed parts attached."""
    for child in sentence.children(token.index):
        if _base(child.deprel) == "case":
            parts = [child.lemma]
            parts += [
                g.lemma
                for g in sentence.children(child.index)
                if _base(g.deprel) == "fixed"
            ]
            return "_".join(parts)
    return None


def _render_unit(head: Token, sentence: Sentence, allow_of: bool) -> str:
    """Space-joined rendering of a head with its absorbed modifiers."""
    glued = [(head.index, head.lemma)]
    words: list[tuple[int, str]] = []
    of_complement: Token | None = None

    for child in sentence.children(head.index):
        base = _base(child.deprel)
        if base in _UNDERSCORE_DEPS:
            glued.append((child.index, child.lemma))
        elif base in _SPACE_DEPS:
            words.append((child.index, child.lemma))
        elif allow_of and base == "nmod" and of_complement is None:
            if _case_lemma(child, sentence) == "of":
                of_complement = child

    glued.sort()
    core = "_".join(lemma for _, lemma in glued)
    units = sorted(words + [(glued[0][0], core)])
    text = " ".join(lemma for _, lemma in units)
    if of_complement is not None:
        text = f"{text} of {_render_unit(of_complement, sentence, allow_of=False)}"
    return text


def extend_head(head_token: Token, sentence: Sentence) -> str:
    """Extended-head string for a component head chosen from the parse."""
    return _render_unit(head_token, sentence, allow_of=True)


def is_pronoun(head: str, head_token: Token, config: PipelineConfig | None = None) -> bool:
    """True when the component head is pronominal (by tag or closed list)."""
    pronouns = config.pronoun_list if config is not None else DEFAULT_PRONOUNS
    return head_token.pos == "PRON" or head_token.lemma in pronouns


def _is_main_verb(token: Token) -> bool:
    return token.pos in VERBAL_POS and token.deprel not in EXCLUDED_VERB_DEPRELS


def extract_instances(sentence: Sentence, config: PipelineConfig | None = None) -> list[VerbInstance]:
    """One VerbInstance per main verb of the sentence.

    Auxiliaries, copulas and adjectival participles are not instances.
    Passive surface subjects are recorded as objects and by-agents as
    subjects, so active and passive statements of one event align.
    """
    if config is None:
        config = PipelineConfig()

    instances = []
    for verb in sentence.tokens:
        if not _is_main_verb(verb):
            continue

        children = sentence.children(verb.index)
        passive = any(
            child.deprel == "aux:pass" or child.deprel == "nsubj:pass"
            for child in children
        )

        components: dict[str, set[str]] = {}
        pronouns: set[str] = set()

        for child in children:
            kind = config.map_deprel(child.deprel)
            if kind == IGNORE:
                continue

            if kind == PP:
                case = _case_lemma(child, sentence)
                if case is None:
                    relation, filler = MODIFIER, extend_head(child, sentence)
                elif passive and case == "by":
                    relation, filler = SUBJECT, extend_head(child, sentence)
                else:
                    relation, filler = f"pp-{case}", extend_head(child, sentence)
            elif kind == MODIFIER:
                if _base(child.deprel) == "advcl":
                    marker = next(
                        (c.lemma for c in sentence.children(child.index)
                         if _base(c.deprel) == "mark"),
                        None,
                    )
                    if marker is None:
                        continue
                    relation, filler = MODIFIER, marker
                else:
                    relation, filler = MODIFIER, child.lemma
            else:
                relation, filler = kind, extend_head(child, sentence)

            components.setdefault(relation, set()).add(filler)
            if relation in (SUBJECT, OBJECT) and is_pronoun(filler, child, config):
                pronouns.add(filler)

        instances.append(
            VerbInstance(
                verb=verb.lemma,
                sentence_id=sentence.id,
                token_index=verb.index,
                components={rel: frozenset(f) for rel, f in sorted(components.items())},
                pronoun_fillers=frozenset(pronouns),
            )
        )
    return instances


def extract_corpus(corpus, config: PipelineConfig | None = None) -> list[VerbInstance]:
    instances = []
    for sentence in corpus.sentences:
        instances.extend(extract_instances(sentence, config))
    return instances
