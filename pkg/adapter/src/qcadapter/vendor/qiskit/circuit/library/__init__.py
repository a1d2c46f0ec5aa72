from .standard_gates import (CXGate, HGate, PhaseGate, RXGate, RYGate, RZGate,
                             XGate, ZGate)

__all__ = ["CXGate", "HGate", "PhaseGate", "RXGate", "RYGate", "RZGate",
           "XGate", "ZGate"]
