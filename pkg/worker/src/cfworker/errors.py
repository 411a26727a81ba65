"""Worker exception taxonomy."""


class WorkerError(Exception):
    """Base class for expected worker failures."""


class ConfigError(WorkerError):
    """Invalid training or serving settings."""


class DatasetError(WorkerError):
    """Training dataset cannot be built or used."""


class TrainingError(WorkerError):
    """Fine-tuning failed (missing base model, OOM, short dataset)."""
