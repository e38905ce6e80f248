"""Command-line pipeline.

Stages communicate through files (JSON-lines and TSV) so each one can be
re-run, cached and tested on its own; `run` composes extract -> pairs ->
score and must produce byte-identical artifacts to running the stages by
hand. Exit codes: 0 success, 1 input error, 2 internal consistency error.
"""

from __future__ import annotations

import contextlib
import json
import sys
from typing import IO, Iterable, Sequence

import click

from . import __version__
from .config import MLE_PER_INSTANCE, MLE_PER_RELATION, PipelineConfig, load_config
from .conllu import Corpus, load_corpus
from .errors import ConsistencyError, ParamineError, ParseError
from .evaluation import (
    CORRECT,
    cohen_kappa,
    contingency_table,
    precision_recall_curve,
    precision_with_ci,
    read_judgments,
    verdict_map,
)
from .extraction import VerbInstance, extract_corpus
from .lp import SlotTable, build_slot_vectors, rank_lp_scores, rank_matched_sample
from .overlap import SentenceMatrix
from .pairs import generate_filtered_pairs, index_instances, read_pairs, write_pairs
from .scoring import TypePair, TypePairScore, score_pairs
from .stats import build_stats, read_stats, write_stats


@contextlib.contextmanager
def _stage(name: str):
    """Prefix pipeline errors with the stage they came from."""
    try:
        yield
    except ParamineError as exc:
        exc.args = (f"[{name}] {exc.args[0]}",) + exc.args[1:]
        raise


@contextlib.contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _load_config(ctx) -> PipelineConfig:
    return ctx.obj["config"]


# ---------------------------------------------------------------- writers

def write_instances(instances: Iterable[VerbInstance], fh: IO[str]) -> None:
    for instance in instances:
        fh.write(json.dumps(instance.to_dict(), sort_keys=True))
        fh.write("\n")


def read_instances(fh: IO[str]) -> list[VerbInstance]:
    return [VerbInstance.from_dict(json.loads(line)) for line in fh if line.strip()]


def write_scores(
    scores: Sequence[TypePairScore],
    fh: IO[str],
    mle_mode: str,
    threshold: float | None,
) -> None:
    threshold_note = "unspecified" if threshold is None else f"{threshold:g}"
    fh.write(
        f"# paramine scores\tlog_base=natural\tmle_mode={mle_mode}"
        f"\toverlap_threshold={threshold_note}\n"
    )
    fh.write("rank\tv1\tv2\tscore\tsupport\tevidence\n")
    for rank, row in enumerate(scores, start=1):
        evidence = ";".join(f"{left},{right}" for left, right in row.evidence)
        fh.write(
            f"{rank}\t{row.pair.v1}\t{row.pair.v2}\t{row.score:.6f}"
            f"\t{row.support}\t{evidence}\n"
        )


def read_scores(fh: IO[str]) -> list[dict]:
    rows = []
    for line in fh:
        line = line.rstrip("\n")
        if not line or line.startswith("#") or line.startswith("rank\t"):
            continue
        rank, v1, v2, score, support, evidence = line.split("\t")
        rows.append(
            {
                "rank": int(rank),
                "pair": TypePair(v1, v2),
                "score": float(score),
                "support": int(support),
                "evidence": [
                    tuple(item.split(",", 1)) for item in evidence.split(";") if item
                ],
            }
        )
    return rows


def _rankings_per_verb(rows: list[dict]) -> dict[str, list[str]]:
    """Per-verb candidate lists in ranked order, from a scores/lp table."""
    rankings: dict[str, list[str]] = {}
    for row in rows:
        pair = row["pair"]
        rankings.setdefault(pair.v1, []).append(pair.v2)
        rankings.setdefault(pair.v2, []).append(pair.v1)
    return rankings


def report_evidence(score_rows: list[dict], corpus: Corpus, top_k: int) -> tuple[str, list[str]]:
    """Human-readable evidence: both sentences of every supporting pair."""
    lines = []
    warnings = []
    for row in score_rows[:top_k]:
        pair = row["pair"]
        lines.append(
            f"{row['rank']}. <{pair.v1}, {pair.v2}>"
            f"  score={row['score']:.6f}  support={row['support']}"
        )
        for left_sid, right_sid in row["evidence"]:
            for sid in (left_sid, right_sid):
                sentence = corpus.get(sid)
                if sentence is None:
                    warnings.append(f"unknown sentence id {sid!r}")
                    lines.append(f"    [{sid}] <sentence not found>")
                else:
                    lines.append(f"    [{sid}] {sentence.surface_text()}")
            lines.append("")
    text = "\n".join(lines).rstrip("\n")
    return (text + "\n" if text else ""), warnings


# ---------------------------------------------------------------- commands

@click.group()
@click.version_option(__version__)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="INI config file (relations, pronouns, pipeline).")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker threads for pair generation.")
@click.option("--seed", type=int, default=None, help="Override the configured RNG seed.")
@click.pass_context
def cli(ctx, config_path, jobs, seed):
    """Mine lexical verb paraphrases from a dependency-parsed corpus."""
    config = load_config(config_path) if config_path else PipelineConfig()
    if seed is not None:
        config = config.with_overrides(seed=seed)
    ctx.obj = {"config": config, "jobs": jobs}


@cli.command()
@click.argument("conllu", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", default=None, help="Instances JSON-lines (default stdout).")
@click.option("--stats-out", default=None, type=click.Path(dir_okay=False),
              help="Also write corpus statistics JSON here.")
@click.option("--skip-punct", is_flag=True, default=None,
              help="Exclude punctuation tokens from token counts.")
@click.pass_context
def extract(ctx, conllu, output, stats_out, skip_punct):
    """Extract verb instances from CoNLL-U files."""
    config = _load_config(ctx).with_overrides(skip_punct=skip_punct)
    with _stage("extract"):
        corpus = load_corpus(conllu)
        instances = extract_corpus(corpus, config)
        with _output(output) as fh:
            write_instances(instances, fh)
        if stats_out:
            stats = build_stats(corpus, instances, skip_punct=config.skip_punct)
            with open(stats_out, "w", encoding="utf-8") as fh:
                write_stats(stats, fh)


@cli.command()
@click.option("--instances", "instances_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", "conllu", multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--stats", "stats_path", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Statistics JSON (default: rebuilt from corpus and instances).")
@click.option("-o", "--output", default=None, help="Pairs JSON-lines (default stdout).")
@click.option("--overlap-threshold", type=float, default=None,
              help="Minimum tf-idf sentence overlap (default from config).")
@click.option("--keep-contradictions", is_flag=True, help="Debug: skip the contradiction filter.")
@click.option("--same-sentence", is_flag=True, help="Debug: allow pairs within one sentence.")
@click.option("--skip-punct", is_flag=True, default=None,
              help="Exclude punctuation tokens from token counts.")
@click.pass_context
def pairs(ctx, instances_path, conllu, stats_path, output, overlap_threshold,
          keep_contradictions, same_sentence, skip_punct):
    """Generate filtered candidate instance pairs."""
    config = _load_config(ctx).with_overrides(
        overlap_threshold=overlap_threshold, skip_punct=skip_punct
    )
    with _stage("pairs"):
        corpus = load_corpus(conllu)
        with open(instances_path, encoding="utf-8") as fh:
            instances = read_instances(fh)
        if stats_path:
            with open(stats_path, encoding="utf-8") as fh:
                stats = read_stats(fh)
        else:
            stats = build_stats(corpus, instances, skip_punct=config.skip_punct)
        matrix = SentenceMatrix(corpus, stats)
        index = index_instances(instances)
        result, _ = generate_filtered_pairs(
            index, matrix, config.overlap_threshold,
            keep_contradictions=keep_contradictions,
            same_sentence=same_sentence,
            jobs=ctx.obj["jobs"],
        )
        with _output(output) as fh:
            write_pairs(result, fh)


@cli.command()
@click.option("--pairs", "pairs_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--stats", "stats_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", default=None, help="Ranked TSV (default stdout).")
@click.option("--per-relation-mle", is_flag=True,
              help="Estimate component probabilities within each relation.")
@click.option("--overlap-threshold", type=float, default=None,
              help="Threshold used upstream, echoed in the output header.")
@click.pass_context
def score(ctx, pairs_path, stats_path, output, per_relation_mle, overlap_threshold):
    """Score and rank verb type pairs."""
    with _stage("score"):
        with open(pairs_path, encoding="utf-8") as fh:
            instance_pairs = read_pairs(fh)
        with open(stats_path, encoding="utf-8") as fh:
            stats = read_stats(fh)
        mle_mode = MLE_PER_RELATION if per_relation_mle else MLE_PER_INSTANCE
        scores = score_pairs(instance_pairs, stats, mle_mode)
        with _output(output) as fh:
            write_scores(scores, fh, mle_mode, overlap_threshold)


@cli.command()
@click.option("--instances", "instances_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", default=None, help="Ranked TSV (default stdout).")
@click.option("--lp-min-freq", type=click.IntRange(min=1), default=None,
              help="Drop slot fillers seen fewer times than this.")
@click.pass_context
def lp(ctx, instances_path, output, lp_min_freq):
    """Rank verb pairs by per-slot distributional similarity."""
    config = _load_config(ctx).with_overrides(lp_min_freq=lp_min_freq)
    with _stage("lp"):
        with open(instances_path, encoding="utf-8") as fh:
            instances = read_instances(fh)
        table = SlotTable(build_slot_vectors(instances, min_freq=config.lp_min_freq))
        scores = rank_lp_scores(table)
        with _output(output) as fh:
            fh.write(f"# paramine lp\tlog_base=natural\tlp_min_freq={config.lp_min_freq}\n")
            fh.write("rank\tv1\tv2\tsubject_sim\tobject_sim\tscore\n")
            for rank, row in enumerate(scores, start=1):
                fh.write(
                    f"{rank}\t{row.pair.v1}\t{row.pair.v2}\t{row.subject_sim:.6f}"
                    f"\t{row.object_sim:.6f}\t{row.score:.6f}\n"
                )


@cli.command("sample-lp")
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="TSV of verb pairs (first two columns).")
@click.option("--our-ranking", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--lp-ranking", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=None, help="Override the configured RNG seed.")
@click.option("-o", "--output", default=None, help="Matched sample TSV (default stdout).")
@click.pass_context
def sample_lp(ctx, sample_path, our_ranking, lp_ranking, seed, output):
    """Build the rank-matched baseline comparison sample."""
    config = _load_config(ctx).with_overrides(seed=seed)
    with _stage("sample-lp"):
        sample = []
        with open(sample_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#") or line.startswith("rank\t"):
                    continue
                cols = line.split("\t")
                if len(cols) < 2:
                    raise ParseError(f"sample line needs two columns: {line!r}")
                sample.append(TypePair(*sorted(cols[:2])))
        with open(our_ranking, encoding="utf-8") as fh:
            ours = _rankings_per_verb(read_scores(fh))
        with open(lp_ranking, encoding="utf-8") as fh:
            theirs = _rankings_per_verb(read_scores_lp(fh))

        result = rank_matched_sample(ours, theirs, sample, seed=config.seed)
        for note in result.notes:
            click.echo(f"note: {note}", err=True)
        with _output(output) as fh:
            fh.write(f"# paramine sample-lp\tseed={config.seed}\tskipped={len(result.notes)}\n")
            fh.write("pivot\tmatched\trank\tnote\n")
            for pivot, matched, k, note in result.rows:
                fh.write(f"{pivot}\t{matched}\t{k}\t{note}\n")


def read_scores_lp(fh: IO[str]) -> list[dict]:
    rows = []
    for line in fh:
        line = line.rstrip("\n")
        if not line or line.startswith("#") or line.startswith("rank\t"):
            continue
        rank, v1, v2, subject_sim, object_sim, score_value = line.split("\t")
        rows.append({"rank": int(rank), "pair": TypePair(v1, v2), "score": float(score_value)})
    return rows


@cli.command("eval")
@click.option("--ranking", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--judgments", "judgments_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", default=None, help="PR-curve TSV (default stdout).")
@click.option("--alpha", type=float, default=0.05, show_default=True,
              help="Significance level for the precision interval.")
@click.pass_context
def eval_cmd(ctx, ranking, judgments_path, output, alpha):
    """Precision-recall curve and overall precision with interval."""
    with _stage("eval"):
        with open(ranking, encoding="utf-8") as fh:
            ranked = [row["pair"] for row in read_scores(fh)]
        with open(judgments_path, encoding="utf-8") as fh:
            try:
                judgments = read_judgments(fh)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        verdicts, conflicts = verdict_map(judgments)
        curve, unjudged = precision_recall_curve(ranked, verdicts)
        judged_flags = [verdicts[p] == CORRECT for p in ranked if p in verdicts]
        if not judged_flags:
            raise ParseError("no ranked pair has a judgment")
        precision, (low, high) = precision_with_ci(judged_flags, alpha)
        with _output(output) as fh:
            fh.write(
                f"# paramine eval\tn={len(judged_flags)}\tprecision={precision:.6f}"
                f"\tci=[{low:.6f},{high:.6f}]\tmethod=wald\talpha={alpha:g}"
                f"\tunjudged={unjudged}\tconflicts={conflicts}\n"
            )
            fh.write("rank\tprecision\trecall\n")
            for point in curve:
                recall = "NA" if point.recall is None else f"{point.recall:.6f}"
                fh.write(f"{point.rank_cutoff}\t{point.precision:.6f}\t{recall}\n")


@cli.command()
@click.argument("judge_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("judge_b", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def kappa(ctx, judge_a, judge_b):
    """Inter-judge agreement over a shared pair set."""
    with _stage("kappa"):
        maps = []
        for path in (judge_a, judge_b):
            with open(path, encoding="utf-8") as fh:
                try:
                    verdicts, conflicts = verdict_map(read_judgments(fh))
                except ValueError as exc:
                    raise ParseError(str(exc)) from exc
            if conflicts:
                raise ParseError(f"{path}: {conflicts} pairs have conflicting verdicts")
            maps.append(verdicts)
        try:
            value = cohen_kappa(maps[0], maps[1])
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        table = contingency_table(maps[0], maps[1])
        click.echo("\tB:correct\tB:incorrect")
        click.echo(f"A:correct\t{table[0][0]}\t{table[0][1]}")
        click.echo(f"A:incorrect\t{table[1][0]}\t{table[1][1]}")
        click.echo(f"kappa\t{value:.6f}")
        click.echo(f"n\t{sum(sum(row) for row in table)}")


@cli.command()
@click.option("--scores", "scores_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", "conllu", multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--top-k", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("-o", "--output", default=None, help="Report text (default stdout).")
@click.pass_context
def report(ctx, scores_path, conllu, top_k, output):
    """Show the evidence sentences behind the top-ranked pairs."""
    with _stage("report"):
        with open(scores_path, encoding="utf-8") as fh:
            rows = read_scores(fh)
        corpus = load_corpus(conllu)
        text, warnings = report_evidence(rows, corpus, top_k)
        for warning in warnings:
            click.echo(f"warning: {warning}", err=True)
        with _output(output) as fh:
            fh.write(text)


@cli.command()
@click.argument("conllu", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--outdir", required=True, type=click.Path(file_okay=False))
@click.option("--overlap-threshold", type=float, default=None)
@click.option("--keep-contradictions", is_flag=True)
@click.option("--same-sentence", is_flag=True)
@click.option("--per-relation-mle", is_flag=True)
@click.option("--skip-punct", is_flag=True, default=None)
@click.option("--top-k", type=click.IntRange(min=0), default=10, show_default=True,
              help="Pairs covered by the evidence report.")
@click.pass_context
def run(ctx, conllu, outdir, overlap_threshold, keep_contradictions, same_sentence,
        per_relation_mle, skip_punct, top_k):
    """Run the whole pipeline and write all artifacts to a directory."""
    import os

    config = _load_config(ctx).with_overrides(
        overlap_threshold=overlap_threshold,
        skip_punct=skip_punct,
        mle_mode=MLE_PER_RELATION if per_relation_mle else None,
    )
    os.makedirs(outdir, exist_ok=True)

    with _stage("extract"):
        corpus = load_corpus(conllu)
        instances = extract_corpus(corpus, config)
        with open(os.path.join(outdir, "instances.jsonl"), "w", encoding="utf-8") as fh:
            write_instances(instances, fh)
        stats = build_stats(corpus, instances, skip_punct=config.skip_punct)
        with open(os.path.join(outdir, "stats.json"), "w", encoding="utf-8") as fh:
            write_stats(stats, fh)

    with _stage("pairs"):
        matrix = SentenceMatrix(corpus, stats)
        index = index_instances(instances)
        instance_pairs, counts = generate_filtered_pairs(
            index, matrix, config.overlap_threshold,
            keep_contradictions=keep_contradictions,
            same_sentence=same_sentence,
            jobs=ctx.obj["jobs"],
        )
        with open(os.path.join(outdir, "pairs.jsonl"), "w", encoding="utf-8") as fh:
            write_pairs(instance_pairs, fh)

    with _stage("score"):
        scores = score_pairs(instance_pairs, stats, config.mle_mode)
        with open(os.path.join(outdir, "scores.tsv"), "w", encoding="utf-8") as fh:
            write_scores(scores, fh, config.mle_mode, config.overlap_threshold)

    with _stage("report"):
        with open(os.path.join(outdir, "scores.tsv"), encoding="utf-8") as fh:
            rows = read_scores(fh)
        text, warnings = report_evidence(rows, corpus, top_k)
        for warning in warnings:
            click.echo(f"warning: {warning}", err=True)
        with open(os.path.join(outdir, "report.txt"), "w", encoding="utf-8") as fh:
            fh.write(text)

    manifest = {
        "config": {
            "overlap_threshold": config.overlap_threshold,
            "mle_mode": config.mle_mode,
            "log_base": config.log_base_note,
            "lp_min_freq": config.lp_min_freq,
            "seed": config.seed,
            "skip_punct": config.skip_punct,
            "keep_contradictions": keep_contradictions,
            "same_sentence": same_sentence,
        },
        "corpus": {"sentences": len(corpus), "tokens": stats.N},
        "instances": stats.verb_instance_count,
        "keys": len(index),
        "candidate_pairs": counts.candidate_pairs,
        "pairs_after_overlap": counts.after_overlap,
        "pairs_after_contradiction": counts.after_contradiction,
        "type_pairs": len(scores),
    }
    with open(os.path.join(outdir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except ConsistencyError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except (ParamineError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
