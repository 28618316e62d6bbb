"""Consistency checks for dimer models on compact surfaces."""
from .model import DimerModel, ModelError, euler_characteristic, genus, load_model, read_model, validate

__version__ = "0.1.0"

__all__ = ["DimerModel", "ModelError", "euler_characteristic", "genus", "load_model", "read_model", "validate"]
