"""Word tensors over finite groups: representation structure, rank bounds
and two-layer model training."""

from ._core import (  # noqa: F401
    Group,
    Weights,
    box_rank,
    cfc_support,
    construct_full,
    construct_single_bsc,
    exact_support,
    hd_loss,
    heatmap,
    train_hd,
    word_letters,
)

__all__ = [
    "Group",
    "Weights",
    "box_rank",
    "cfc_support",
    "construct_full",
    "construct_single_bsc",
    "exact_support",
    "hd_loss",
    "heatmap",
    "train_hd",
    "word_letters",
]
