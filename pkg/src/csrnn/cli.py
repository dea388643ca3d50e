"""Command-line surface: train, tag, eval, baseline, synth, embed-train and
grad-check subcommands.

Settings resolve in fixed order: built-in defaults, then a ``key = value``
config file given with ``--config``, then explicit flags (flags win).  Every
run writes its fully resolved configuration next to its outputs as
``config.resolved``.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import IO, Sequence

from . import baseline as baseline_mod
from . import embeddings as emb
from . import metrics
from . import rnn
from .corpus import (
    SCHEMES,
    Dataset,
    LabelScheme,
    load_synth_spec,
    parse_token_file,
    serialize_dataset,
    split_by_author,
    synth_corpus,
)
from .errors import (
    AlignmentError,
    CompatibilityError,
    CsrnnError,
    LabelError,
    ParseError,
    SchemeError,
)

GRAD_CHECK_THRESHOLD = 1e-4


def _bool(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _read_config_file(path: str) -> dict[str, str]:
    _require_file(path, "config file")
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError(line_no, f"expected key = value, got {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _resolve(args, file_cfg: dict[str, str], settings) -> dict:
    """Merge defaults, config-file values and flags; flags win."""
    resolved = {}
    for key, cast, default in settings:
        flag = getattr(args, key, None)
        if flag is not None:
            resolved[key] = flag
        elif key in file_cfg:
            resolved[key] = cast(file_cfg[key])
        else:
            resolved[key] = default
    return resolved


def _write_resolved(resolved: dict, out_dir: str) -> None:
    path = os.path.join(out_dir, "config.resolved")
    with open(path, "w", encoding="utf-8") as f:
        for key in sorted(resolved):
            value = resolved[key]
            if value is None:
                continue
            if isinstance(value, bool):
                value = "true" if value else "false"
            f.write(f"{key} = {value}\n")


def _require_file(path: str, what: str) -> None:
    if not os.path.isfile(path):
        raise FileNotFoundError(f"{what} not found: {path}")


def _ensure_out(path: str) -> None:
    os.makedirs(path, exist_ok=True)


def _scheme(name: str) -> LabelScheme:
    try:
        return SCHEMES[name]
    except KeyError:
        raise SchemeError(
            f"unknown scheme {name!r}; available: {sorted(SCHEMES)}"
        ) from None


def _parse_file(path: str, scheme: LabelScheme, what: str,
                require_labels: bool = True) -> Dataset:
    _require_file(path, what)
    with open(path, encoding="utf-8") as f:
        return parse_token_file(f, scheme, require_labels=require_labels)


def write_predictions(
    stream: IO[str],
    ds: Dataset,
    preds: Sequence[rnn.Prediction],
    scheme: LabelScheme,
    with_probs: bool = False,
) -> None:
    """Predictions TSV: token, gold when present, predicted label, and
    optional ``label:prob`` columns; sentence breaks preserved."""
    first = True
    for sent, pred in zip(ds.sentences, preds):
        if not first:
            stream.write("\n")
        first = False
        if sent.author_id:
            stream.write(f"# author={sent.author_id}\n")
        for t, tok in enumerate(sent.tokens):
            fields = [tok.text]
            if tok.gold_label is not None:
                fields.append(scheme.label(tok.gold_label))
            fields.append(scheme.label(int(pred.labels[t])))
            if with_probs and pred.probabilities is not None:
                fields.extend(
                    f"{lbl}:{p:.6g}"
                    for lbl, p in zip(scheme.labels, pred.probabilities[t])
                )
            stream.write("\t".join(fields) + "\n")


def read_predictions(
    stream, scheme: LabelScheme
) -> list[list[tuple[str, int]]]:
    """Read a predictions TSV back as (token, predicted label id) sentences.
    Probability columns (the ones holding ':') are skipped."""
    sentences: list[list[tuple[str, int]]] = []
    current: list[tuple[str, int]] = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line:
            if current:
                sentences.append(current)
                current = []
            continue
        if line.startswith("# author="):
            continue
        fields = line.split("\t")
        core = [fields[0]] + [f for f in fields[1:] if ":" not in f]
        if len(core) == 2:
            token, pred = core
        elif len(core) == 3:
            token, _, pred = core
        else:
            raise ParseError(
                line_no, f"expected 2 or 3 label columns, got {len(core)}"
            )
        if pred not in scheme:
            raise LabelError(f"line {line_no}: unknown predicted label {pred!r}")
        current.append((token, scheme.index(pred)))
    if current:
        sentences.append(current)
    return sentences


def _write_report_files(report: metrics.EvalReport, out_dir: str) -> None:
    with open(os.path.join(out_dir, "report.txt"), "w", encoding="utf-8") as f:
        f.write(metrics.format_report_text(report))
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as f:
        f.write(metrics.format_report_json(report))
    with open(os.path.join(out_dir, "confusion.tsv"), "w", encoding="utf-8") as f:
        f.write(metrics.confusion_to_tsv(report))


# ---------------------------------------------------------------------------
# subcommands

TRAIN_SETTINGS = (
    ("train", str, None),
    ("val", str, None),
    ("test", str, None),
    ("pretrained", str, None),
    ("scheme", str, "cs6"),
    ("arch", str, rnn.ELMAN),
    ("dim_emb", int, 100),
    ("hidden", int, 100),
    ("bptt_depth", int, 9),
    ("use_ngrams", _bool, False),
    ("learning_rate", float, 0.1),
    ("lr_decay", float, 0.95),
    ("max_epochs", int, 50),
    ("patience", int, 10),
    ("min_count", int, 1),
    ("lowercase", _bool, False),
    ("seed", int, 0),
)


def cmd_train(args) -> int:
    file_cfg = _read_config_file(args.config) if args.config else {}
    s = _resolve(args, file_cfg, TRAIN_SETTINGS)
    for key in ("train", "val"):
        if not s[key]:
            raise CsrnnError(f"train command needs --{key}")
    scheme = _scheme(s["scheme"])

    pretrained = None
    if s["pretrained"]:
        _require_file(s["pretrained"], "pretrained embeddings")
        with open(s["pretrained"], encoding="utf-8") as f:
            pretrained = emb.load_embeddings_text(f)

    cfg = rnn.RnnConfig(
        num_labels=len(scheme),
        arch=s["arch"],
        dim_emb=s["dim_emb"],
        hidden=s["hidden"],
        bptt_depth=s["bptt_depth"],
        use_ngrams=s["use_ngrams"],
        use_pretrained=pretrained is not None,
        pretrained_dim=pretrained.dim if pretrained else 100,
        learning_rate=s["learning_rate"],
        lr_decay=s["lr_decay"],
        max_epochs=s["max_epochs"],
        patience=s["patience"],
        seed=s["seed"],
        lowercase=s["lowercase"],
        min_count=s["min_count"],
    )
    train_ds = _parse_file(s["train"], scheme, "training file")
    val_ds = _parse_file(s["val"], scheme, "validation file")

    model, history = rnn.train(cfg, train_ds, val_ds, pretrained)

    _ensure_out(args.out)
    rnn.save_model(model, os.path.join(args.out, "model.csrnn"))
    with open(os.path.join(args.out, "history.tsv"), "w", encoding="utf-8") as f:
        f.write("epoch\ttrain_loss\tval_accuracy\tlearning_rate\timproved\n")
        for row in history:
            f.write(
                f"{row.epoch}\t{row.train_loss:.17g}\t{row.val_accuracy:.17g}"
                f"\t{row.learning_rate:.17g}\t{int(row.improved)}\n"
            )
    _write_resolved({**s, "command": "train", "out": args.out}, args.out)

    best = max(history, key=lambda r: r.val_accuracy)
    print(f"best epoch {best.epoch}: val_accuracy {best.val_accuracy:.4f}")

    if s["test"]:
        test_ds = _parse_file(s["test"], scheme, "test file")
        preds = rnn.tag(model, test_ds, pretrained)
        with open(os.path.join(args.out, "predictions.tsv"), "w",
                  encoding="utf-8") as f:
            write_predictions(f, test_ds, preds, scheme)
        report = metrics.evaluate(preds, test_ds)
        _write_report_files(report, args.out)
        print(f"test accuracy {report.accuracy:.4f}")
    return 0


def cmd_tag(args) -> int:
    _require_file(args.model, "model file")
    model = rnn.load_model(args.model)
    pretrained = None
    if model.config.use_pretrained:
        if not args.pretrained:
            raise CompatibilityError(
                "model was trained with pretrained vectors; pass --pretrained"
            )
        _require_file(args.pretrained, "pretrained embeddings")
        with open(args.pretrained, encoding="utf-8") as f:
            pretrained = emb.load_embeddings_text(f)

    try:
        ds = _parse_file(args.input, model.scheme, "input file",
                         require_labels=False)
    except LabelError as e:
        raise CompatibilityError(f"input labels do not match model scheme: {e}")
    preds = rnn.tag(model, ds, pretrained)
    _ensure_out(args.out)
    with open(os.path.join(args.out, "predictions.tsv"), "w",
              encoding="utf-8") as f:
        write_predictions(f, ds, preds, model.scheme, with_probs=args.probs)
    _write_resolved(
        {"command": "tag", "model": args.model, "input": args.input,
         "out": args.out, "probs": args.probs,
         "pretrained": args.pretrained}, args.out)
    print(f"tagged {ds.num_tokens()} tokens in {len(ds.sentences)} sentences")
    return 0


def cmd_eval(args) -> int:
    file_cfg = _read_config_file(args.config) if args.config else {}
    s = _resolve(args, file_cfg, (("scheme", str, "cs6"),))
    scheme = _scheme(s["scheme"])
    gold = _parse_file(args.gold, scheme, "gold file")
    _require_file(args.pred, "predictions file")
    with open(args.pred, encoding="utf-8") as f:
        pred_sents = read_predictions(f, scheme)

    if len(pred_sents) != len(gold.sentences):
        raise AlignmentError(
            f"{len(pred_sents)} predicted sentences vs {len(gold.sentences)} gold"
        )
    preds = []
    import numpy as np

    for i, (ps, gs) in enumerate(zip(pred_sents, gold.sentences)):
        if len(ps) != len(gs.tokens):
            raise AlignmentError(
                f"sentence {i}: {len(ps)} predictions for {len(gs.tokens)} tokens"
            )
        for (ptok, _), gtok in zip(ps, gs.tokens):
            if ptok != gtok.text:
                raise AlignmentError(
                    f"sentence {i}: token mismatch {ptok!r} vs {gtok.text!r}"
                )
        preds.append(
            rnn.Prediction(np.array([p for _, p in ps], dtype=np.int64), None)
        )
    report = metrics.evaluate(preds, gold)
    _ensure_out(args.out)
    _write_report_files(report, args.out)
    _write_resolved(
        {**s, "command": "eval", "pred": args.pred, "gold": args.gold,
         "out": args.out}, args.out)
    sys.stdout.write(metrics.format_report_text(report))
    return 0


def cmd_baseline(args) -> int:
    file_cfg = _read_config_file(args.config) if args.config else {}
    s = _resolve(args, file_cfg, (("scheme", str, "cs6"),))
    scheme = _scheme(s["scheme"])
    train_ds = _parse_file(args.train, scheme, "training file")
    model = baseline_mod.fit_baseline(train_ds)
    input_ds = _parse_file(args.input, scheme, "input file", require_labels=False)
    preds = baseline_mod.tag_dataset(model, input_ds)
    _ensure_out(args.out)
    with open(os.path.join(args.out, "lexicon.tsv"), "w", encoding="utf-8") as f:
        baseline_mod.save_baseline(model, f)
    with open(os.path.join(args.out, "predictions.tsv"), "w",
              encoding="utf-8") as f:
        write_predictions(f, input_ds, preds, scheme)
    _write_resolved(
        {**s, "command": "baseline", "train": args.train, "input": args.input,
         "out": args.out}, args.out)
    print(f"baseline tagged {input_ds.num_tokens()} tokens")
    return 0


def cmd_synth(args) -> int:
    _require_file(args.config, "generator spec")
    with open(args.config, encoding="utf-8") as f:
        spec, seed = load_synth_spec(f)
    if args.seed is not None:
        seed = args.seed
    ds = synth_corpus(spec, seed)
    _ensure_out(args.out)
    with open(os.path.join(args.out, "corpus.tsv"), "w", encoding="utf-8") as f:
        f.write(serialize_dataset(ds))
    resolved = {
        "command": "synth", "config": args.config, "seed": seed,
        "out": args.out, "num_sentences": spec.num_sentences,
        "mean_length": spec.mean_length,
        "switch_probability": spec.switch_probability,
        "num_authors": spec.num_authors,
    }
    if args.split:
        ratios = tuple(float(x) for x in args.split.split(","))
        split_seed = args.split_seed if args.split_seed is not None else seed
        parts = split_by_author(ds, ratios, split_seed)
        for name, part in zip(("train", "val", "test"), parts):
            with open(os.path.join(args.out, f"corpus.{name}.tsv"), "w",
                      encoding="utf-8") as f:
                f.write(serialize_dataset(part))
        resolved["split"] = args.split
        resolved["split_seed"] = split_seed
    _write_resolved(resolved, args.out)
    print(f"generated {ds.num_tokens()} tokens in {len(ds.sentences)} sentences")
    return 0


EMBED_SETTINGS = (
    ("dim", int, 100),
    ("window", int, 5),
    ("negatives", int, 5),
    ("learning_rate", float, 0.025),
    ("epochs", int, 5),
    ("min_count", int, 1),
    ("seed", int, 0),
)


def cmd_embed_train(args) -> int:
    file_cfg = _read_config_file(args.config) if args.config else {}
    s = _resolve(args, file_cfg, EMBED_SETTINGS)
    _require_file(args.corpus, "corpus file")
    with open(args.corpus, encoding="utf-8") as f:
        sentences = [line.split() for line in f if line.split()]
    params = emb.SgnsParams(
        dim=s["dim"], window=s["window"], negatives=s["negatives"],
        learning_rate=s["learning_rate"], epochs=s["epochs"],
        min_count=s["min_count"], seed=s["seed"],
    )
    vectors = emb.train_skipgram(sentences, params)
    _ensure_out(args.out)
    with open(os.path.join(args.out, "vectors.txt"), "w", encoding="utf-8") as f:
        emb.save_embeddings_text(vectors, f)
    _write_resolved(
        {**s, "command": "embed-train", "corpus": args.corpus, "out": args.out},
        args.out)
    print(f"trained {len(vectors)} vectors of dim {vectors.dim}")
    return 0


def cmd_grad_check(args) -> int:
    cfg = rnn.RnnConfig(
        num_labels=3,
        arch=args.arch,
        dim_emb=8,
        hidden=6,
        use_ngrams=args.use_ngrams,
        use_pretrained=args.use_pretrained,
        pretrained_dim=5,
        seed=args.seed,
    )
    errors = rnn.gradient_check(cfg, args.seed, corrupt=args.corrupt_tensor)
    lines = []
    ok = True
    for name, err in errors.items():
        status = "PASS" if err < GRAD_CHECK_THRESHOLD else "FAIL"
        ok = ok and status == "PASS"
        lines.append(f"{name:8s} max_rel_err={err:.3e}  {status}")
    lines.append(
        f"grad-check: {'PASS' if ok else 'FAIL'} "
        f"(threshold {GRAD_CHECK_THRESHOLD:g})"
    )
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        _ensure_out(args.out)
        with open(os.path.join(args.out, "gradcheck.txt"), "w",
                  encoding="utf-8") as f:
            f.write(text)
        _write_resolved(
            {"command": "grad-check", "arch": args.arch,
             "use_ngrams": args.use_ngrams,
             "use_pretrained": args.use_pretrained, "seed": args.seed,
             "corrupt_tensor": args.corrupt_tensor, "out": args.out},
            args.out)
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csrnn",
        description="Token-level language identification for code-switched "
                    "text with Elman/Jordan recurrent taggers.",
    )
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("--config", help="key = value settings file")
        p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("train", help="train a tagger")
    add_common(p)
    p.add_argument("--train", help="training token file")
    p.add_argument("--val", help="validation token file")
    p.add_argument("--test", help="optional test token file")
    p.add_argument("--pretrained", help="pretrained embedding text file")
    p.add_argument("--scheme", choices=sorted(SCHEMES))
    p.add_argument("--arch", choices=(rnn.ELMAN, rnn.JORDAN))
    p.add_argument("--dim-emb", dest="dim_emb", type=int)
    p.add_argument("--hidden", type=int)
    p.add_argument("--bptt-depth", dest="bptt_depth", type=int)
    p.add_argument("--use-ngrams", dest="use_ngrams",
                   action=argparse.BooleanOptionalAction)
    p.add_argument("--learning-rate", dest="learning_rate", type=float)
    p.add_argument("--lr-decay", dest="lr_decay", type=float)
    p.add_argument("--max-epochs", dest="max_epochs", type=int)
    p.add_argument("--patience", type=int)
    p.add_argument("--min-count", dest="min_count", type=int)
    p.add_argument("--lowercase", action=argparse.BooleanOptionalAction)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tag", help="tag a token file with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--pretrained")
    p.add_argument("--probs", action="store_true",
                   help="append per-label probability columns")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("eval", help="score a predictions file against gold")
    add_common(p)
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--scheme", choices=sorted(SCHEMES))
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("baseline", help="frequency-lookup baseline")
    add_common(p)
    p.add_argument("--train", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--scheme", choices=sorted(SCHEMES))
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("synth", help="generate a synthetic corpus")
    p.add_argument("--config", required=True, help="generator spec file")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, help="override the spec's seed")
    p.add_argument("--split", help="author-split ratios, e.g. 0.8,0.1,0.1")
    p.add_argument("--split-seed", dest="split_seed", type=int)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("embed-train", help="train skip-gram vectors")
    add_common(p)
    p.add_argument("--corpus", required=True,
                   help="raw text, one sentence per line")
    p.add_argument("--dim", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--negatives", type=int)
    p.add_argument("--learning-rate", dest="learning_rate", type=float)
    p.add_argument("--epochs", type=int)
    p.add_argument("--min-count", dest="min_count", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_embed_train)

    p = sub.add_parser("grad-check",
                       help="compare BPTT gradients with finite differences")
    p.add_argument("--arch", choices=(rnn.ELMAN, rnn.JORDAN),
                   default=rnn.ELMAN)
    p.add_argument("--use-ngrams", dest="use_ngrams", default=True,
                   action=argparse.BooleanOptionalAction)
    p.add_argument("--use-pretrained", dest="use_pretrained", default=True,
                   action=argparse.BooleanOptionalAction)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corrupt-tensor", dest="corrupt_tensor",
                   choices=rnn.TENSOR_NAMES,
                   help="perturb one analytic gradient (self-test)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_grad_check)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CsrnnError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
