"""Shared numerical kernels: ODE integration, quadrature and Airy functions."""
from .airy import airy_ai, airy_ai_prime
from .ode import IntegrationError, OdeProblem, OdeTrajectory, integrate
from .quad import QuadratureError, adaptive_quad

__all__ = [
    "IntegrationError",
    "OdeProblem",
    "OdeTrajectory",
    "QuadratureError",
    "adaptive_quad",
    "airy_ai",
    "airy_ai_prime",
    "integrate",
]
