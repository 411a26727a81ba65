"""Fine-tune a causal language model on the dataset text file.

The loop is plain teacher forcing over fixed-length blocks of the token
stream: Adam, per-step cross-entropy logged to CSV, gradient accumulation
for the effective batch. The full recipe starts from a pre-outbreak
GPT-2-medium; tests use a tiny randomly initialized model with a character
tokenizer so no weights need downloading.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import torch

from cfworker.checkpoint import load_base, save_checkpoint
from cfworker.errors import ConfigError, TrainingError

DEFAULT_STEPS = 20_000
SMOKE_STEPS = 50


@dataclass(frozen=True)
class TrainingRunConfig:
    """Optimizer and schedule settings for one fine-tuning run."""

    checkpoint_dir: str
    steps: int = DEFAULT_STEPS
    learning_rate: float = 2e-4
    seq_len: int = 1024
    batch_size: int = 1
    grad_accum: int = 8
    seed: int = 0
    device: str = "cpu"
    loss_log: str | None = None

    def __post_init__(self):
        if self.steps < 1:
            raise ConfigError("steps must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigError("learning rate must be > 0")
        if self.seq_len < 2:
            raise ConfigError("seq_len must be >= 2")
        if self.batch_size < 1 or self.grad_accum < 1:
            raise ConfigError("batch_size and grad_accum must be >= 1")

    @property
    def loss_log_path(self) -> Path:
        if self.loss_log is not None:
            return Path(self.loss_log)
        return Path(self.checkpoint_dir) / "loss.csv"


@dataclass(frozen=True)
class TrainingResult:
    losses: tuple
    checkpoint_dir: Path
    loss_log: Path


def build_smoke_model(vocab_size: int, seq_len: int, seed: int = 0):
    """Tiny randomly initialized GPT-2 for download-free smoke runs."""
    from transformers import GPT2Config, GPT2LMHeadModel

    torch.manual_seed(seed)
    config = GPT2Config(vocab_size=vocab_size, n_positions=seq_len,
                        n_embd=64, n_layer=2, n_head=2)
    return GPT2LMHeadModel(config)


def token_blocks(ids, seq_len: int):
    """Full fixed-length blocks of the token stream, leftovers dropped."""
    blocks = [ids[i:i + seq_len]
              for i in range(0, len(ids) - seq_len + 1, seq_len)]
    if not blocks:
        raise TrainingError(
            f"dataset yields {len(ids)} tokens, shorter than one "
            f"{seq_len}-token sequence")
    return blocks


def windowed_means(losses, window: int = 10):
    """(first-window mean, last-window mean) of the loss series."""
    window = min(window, len(losses))
    first = sum(losses[:window]) / window
    last = sum(losses[-window:]) / window
    return first, last


def _raise_if_oom(exc, config):
    message = str(exc).lower()
    if isinstance(exc, torch.cuda.OutOfMemoryError) or "out of memory" in message:
        raise TrainingError(
            f"out of memory at batch_size={config.batch_size}, "
            f"seq_len={config.seq_len}: raise --grad-accum and lower --batch "
            f"(or --seq-len) to keep the effective batch") from exc
    raise exc


def finetune(dataset_path, config: TrainingRunConfig, model=None,
             tokenizer=None, base: str = "gpt2-medium") -> TrainingResult:
    """Train on the dataset file and write the checkpoint and loss log.

    model/tokenizer default to the pretrained base; passing them in skips
    the download (smoke runs, tests).
    """
    if (model is None) != (tokenizer is None):
        raise ConfigError("pass both model and tokenizer, or neither")
    if model is None:
        model, tokenizer = load_base(base)

    text = Path(dataset_path).read_text(encoding="utf-8")
    blocks = token_blocks(tokenizer.encode(text), config.seq_len)

    torch.manual_seed(config.seed)
    device = torch.device(config.device)
    model.to(device)
    model.train()
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)

    losses = []
    log_path = config.loss_log_path
    log_path.parent.mkdir(parents=True, exist_ok=True)
    cursor = 0

    def next_batch():
        nonlocal cursor
        rows = []
        for _ in range(config.batch_size):
            rows.append(blocks[cursor % len(blocks)])
            cursor += 1
        return torch.tensor(rows, dtype=torch.long, device=device)

    with open(log_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["step", "loss"])
        for step in range(1, config.steps + 1):
            optimizer.zero_grad()
            step_loss = 0.0
            try:
                for _ in range(config.grad_accum):
                    batch = next_batch()
                    loss = model(input_ids=batch, labels=batch).loss
                    (loss / config.grad_accum).backward()
                    step_loss += loss.item() / config.grad_accum
                optimizer.step()
            except (torch.cuda.OutOfMemoryError, RuntimeError) as exc:
                _raise_if_oom(exc, config)
            losses.append(step_loss)
            writer.writerow([step, f"{step_loss:.6f}"])

    checkpoint = save_checkpoint(model, tokenizer, config.checkpoint_dir)
    return TrainingResult(losses=tuple(losses), checkpoint_dir=checkpoint,
                          loss_log=log_path)
