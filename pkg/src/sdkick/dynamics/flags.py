"""Model-term switches for the propagators."""

from dataclasses import dataclass


@dataclass(frozen=True)
class ModelFlags:
    include_micromotion: bool = True
    include_backward: bool = True
    frozen_secular: bool = False
