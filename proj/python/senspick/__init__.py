# Copyright 2026 The SensPick Authors
# SPDX-License-Identifier: Apache-2.0
"""Python interface to the SensPick word sense disambiguation core."""

import json

from ._core import (
    Checkpoint,
    EmbeddingTable,
    EncoderConfig,
    Instance,
    LoadError,
    Pos,
    SenseInventory,
    TrainConfig,
    TrainingError,
    TrainResult,
    UnresolvableError,
    cli_run,
    convert_unified_xml,
    disambiguate,
    load_checkpoint,
    load_corpus,
    train,
    write_corpus,
)
from . import _core

__all__ = [
    "Checkpoint",
    "EmbeddingTable",
    "EncoderConfig",
    "Instance",
    "LoadError",
    "Pos",
    "SenseInventory",
    "TrainConfig",
    "TrainingError",
    "TrainResult",
    "UnresolvableError",
    "cli_run",
    "convert_unified_xml",
    "disambiguate",
    "evaluate",
    "first_sense_baseline",
    "load_checkpoint",
    "load_corpus",
    "mfs_baseline",
    "train",
    "write_corpus",
]


def _report(pair):
    text, predictions = pair
    report = json.loads(text)
    report["predictions"] = predictions
    return report


def evaluate(checkpoint, instances, inventory, table):
    """Scores a checkpoint; returns the report dict plus its TSV predictions."""
    return _report(_core.evaluate(checkpoint, instances, inventory, table))


def mfs_baseline(checkpoint, instances, inventory):
    return _report(_core.mfs_baseline(checkpoint, instances, inventory))


def first_sense_baseline(instances, inventory):
    return _report(_core.first_sense_baseline(instances, inventory))
