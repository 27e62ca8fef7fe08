"""Intrinsic spin observables for massive particles in special relativity."""
from .errors import (
    IntrinsicSpinError,
    MissingSector,
    NonFiniteEvaluation,
    NotARotation,
    NotHermitian,
    OffShellMomentum,
    OrthogonalityViolated,
)
from .poincare_rep import MomentumSpinState, OnShellMomentum
from .report import CheckReport
from .spin_algebra import SpinValue
from .spin_observables import ObserverFrame, SpinTensorOp, intrinsic_spin_tensor

__version__ = "0.1.0"
