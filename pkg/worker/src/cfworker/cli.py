"""cfworker command line: build-data, finetune, serve."""

from __future__ import annotations

import argparse
import logging
import sys

from cfworker.errors import WorkerError

EXIT_OK = 0
EXIT_FAILURE = 1


def cmd_build_data(args) -> int:
    from cfworker.dataset import build_training_file

    dataset = build_training_file(args.corpus, args.out)
    print(f"records={len(dataset.records)} "
          f"source={dataset.source_count} "
          f"mean_words={dataset.mean_words:.1f}")
    return EXIT_OK


def cmd_finetune(args) -> int:
    from cfworker.train import (
        SMOKE_STEPS,
        TrainingRunConfig,
        build_smoke_model,
        finetune,
        windowed_means,
    )

    # unset flags fall back per mode: smoke runs are small by default
    smoke_defaults = {"steps": SMOKE_STEPS, "seq_len": 128, "grad_accum": 1}
    full_defaults = {"steps": None, "seq_len": None, "grad_accum": 8}
    defaults = smoke_defaults if args.smoke else full_defaults
    settings = dict(checkpoint_dir=args.out, learning_rate=args.lr,
                    batch_size=args.batch, seed=args.seed, device=args.device,
                    loss_log=args.loss_log)
    for name in ("steps", "seq_len", "grad_accum"):
        value = getattr(args, name)
        if value is None:
            value = defaults[name]
        if value is not None:
            settings[name] = value
    config = TrainingRunConfig(**settings)

    model = tokenizer = None
    if args.smoke:
        from pathlib import Path

        from cfworker.tokenizer import CharTokenizer

        text = Path(args.dataset).read_text(encoding="utf-8")
        tokenizer = CharTokenizer.from_text(text)
        model = build_smoke_model(tokenizer.vocab_size, config.seq_len,
                                  seed=config.seed)

    result = finetune(args.dataset, config, model=model, tokenizer=tokenizer,
                      base=args.base)
    first, last = windowed_means(result.losses)
    print(f"steps={len(result.losses)} "
          f"first_window_loss={first:.4f} last_window_loss={last:.4f} "
          f"checkpoint={result.checkpoint_dir}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from cfworker.checkpoint import load_checkpoint
    from cfworker.serve import make_app

    model, tokenizer = load_checkpoint(args.checkpoint)
    app = make_app(model, tokenizer, max_concurrency=args.max_concurrency)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfworker",
        description="build the fine-tuning dataset, train, and serve completions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-data", help="corpus JSONL to dataset text file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_data)

    p = sub.add_parser("finetune", help="fine-tune on the dataset file")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True, help="checkpoint directory")
    p.add_argument("--base", default="gpt2-medium",
                   help="pretrained base model name or local path")
    p.add_argument("--steps", type=int, default=None,
                   help="optimizer steps (default 20000; 50 with --smoke)")
    p.add_argument("--lr", type=float, default=2e-4)
    p.add_argument("--seq-len", type=int, default=None,
                   help="tokens per sequence (default 1024; 128 with --smoke)")
    p.add_argument("--batch", type=int, default=1)
    p.add_argument("--grad-accum", type=int, default=None,
                   help="micro-batches per step (default 8; 1 with --smoke)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--device", default="cpu")
    p.add_argument("--loss-log", default=None,
                   help="per-step loss CSV (default <out>/loss.csv)")
    p.add_argument("--smoke", action="store_true",
                   help="tiny random-init model + char tokenizer, no downloads")
    p.set_defaults(func=cmd_finetune)

    p = sub.add_parser("serve", help="serve completions from a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--max-concurrency", type=int, default=2)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WorkerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
