"""Hand-derived Homflypt values in the variables t = sqrt(uc), x = (v - 1)/sqrt(u).

Skein: t^-1 P(L+) - t P(L-) = x P(L0), P(unknot) = 1. With t^2 = uc and
t*x = (v - 1) sqrt(c), every value lives in the sqrt(c) extension.
"""

from tiedlinks.coeff import C_GENERIC, U, V, Scalar

T2 = Scalar(U * C_GENERIC)
TX = Scalar(0, V - 1)

# P(unlink2) = (t^-1 - t)/x = (1 - t^2)/(t x)
P_UNLINK2 = (1 - T2) / TX
# Hopf: t^-1 P(H) - t P(U2) = x  =>  P(H) = t^2 P(U2) + t x
P_HOPF = T2 * P_UNLINK2 + TX
# trefoil: t^-1 P(T) - t P(U) = x P(H)  =>  P(T) = t^2 + t x P(H)
P_TREFOIL = T2 + TX * P_HOPF
# mirror trefoil: t^-1 P(U) - t P(T*) = x P(H*), H* the negative Hopf link
P_HOPF_NEG = (P_UNLINK2 - TX) / T2
P_TREFOIL_MIRROR = (1 - TX * P_HOPF_NEG) / T2


def squared_alternative_holds(y_plus: Scalar, y_minus: Scalar, y_zero: Scalar) -> bool:
    """Skein with x = (v - 1)/sqrt(c), tested in squared form to stay in the sqrt(c) field.

    Multiplying by sqrt(u): c^-1/2 Y+ - u c^1/2 Y- = sqrt(u) (v - 1) c^-1/2 Y0.
    Squaring gives an identity without sqrt(u).
    """
    sc = Scalar.sqrt_c()
    lhs = sc.inverse() * y_plus - U * sc * y_minus
    rhs_sq = U * (V - 1) ** 2 / C_GENERIC * y_zero * y_zero
    return lhs * lhs == rhs_sq


def derived_skein_holds(y_plus: Scalar, y_minus: Scalar, y_zero: Scalar) -> bool:
    """Skein with x = (v - 1)/sqrt(u), multiplied through by sqrt(u)."""
    sc = Scalar.sqrt_c()
    return sc.inverse() * y_plus - U * sc * y_minus == (V - 1) * y_zero
