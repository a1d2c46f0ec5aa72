"""Named gate constructors compatible with the mainstream SDK surface."""
from ... import Gate


def HGate():
    return Gate("h", 1)


def XGate():
    return Gate("x", 1)


def ZGate():
    return Gate("z", 1)


def RXGate(theta):
    return Gate("rx", 1, [theta])


def RYGate(theta):
    return Gate("ry", 1, [theta])


def RZGate(theta):
    return Gate("rz", 1, [theta])


def PhaseGate(theta):
    return Gate("p", 1, [theta])


def CXGate():
    return Gate("cx", 2)


__all__ = ["CXGate", "HGate", "PhaseGate", "RXGate", "RYGate", "RZGate",
           "XGate", "ZGate"]
