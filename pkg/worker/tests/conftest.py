"""Shared worker test helpers: canonical corpus rows and a smoke checkpoint."""

import json
from pathlib import Path

import pytest

from cfworker.dataset import build_training_file
from cfworker.tokenizer import CharTokenizer
from cfworker.train import TrainingRunConfig, build_smoke_model, finetune


def make_row(i, **overrides):
    row = {
        "id": f"{i:016x}",
        "title": f"Headline number {i}",
        "description": f"A short deck for story {i}.",
        "byline": None,
        "published_at": "2019-06-01",
        "url": None,
        "body": f"Officials said on day {i} that the situation was calm. "
                f"Residents of ward {i} went about their business as usual.",
        "origin": "real",
        "model_tag": None,
    }
    row.update(overrides)
    return row


def write_corpus(path, rows):
    text = "\n".join(json.dumps(r, ensure_ascii=False) for r in rows)
    Path(path).write_text(text + "\n", encoding="utf-8")
    return Path(path)


@pytest.fixture(scope="session")
def smoke_run(tmp_path_factory):
    """One 50-step smoke fine-tune shared by training and serving tests."""
    root = tmp_path_factory.mktemp("smoke")
    corpus = write_corpus(root / "corpus.jsonl",
                          [make_row(i) for i in range(10)])
    dataset_path = root / "train.txt"
    build_training_file(corpus, dataset_path)

    text = dataset_path.read_text(encoding="utf-8")
    tokenizer = CharTokenizer.from_text(text)
    config = TrainingRunConfig(checkpoint_dir=str(root / "ckpt"), steps=50,
                               seq_len=64, grad_accum=1, seed=0)
    model = build_smoke_model(tokenizer.vocab_size, config.seq_len, seed=0)
    result = finetune(dataset_path, config, model=model, tokenizer=tokenizer)
    return result


@pytest.fixture(scope="session")
def smoke_checkpoint(smoke_run):
    return smoke_run.checkpoint_dir
