"""Fine-tuning worker: dataset build, training, and completion serving."""

from cfworker.errors import ConfigError, DatasetError, TrainingError, WorkerError

__all__ = ["ConfigError", "DatasetError", "TrainingError", "WorkerError"]
