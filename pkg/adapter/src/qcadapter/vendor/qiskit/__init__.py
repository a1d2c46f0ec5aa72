"""
Minimal QuantumCircuit-compatible shim.

Submissions written against the mainstream SDK surface (``QuantumCircuit``
gate methods, ``RYGate(...).control(...)``, ``initialize``) run against this
package when the real SDK is not installed. It records instructions; it does
not transpile or optimize.
"""
from .circuit import Gate, QuantumCircuit

__version__ = "0.1.0-shim"

__all__ = ["Gate", "QuantumCircuit"]
