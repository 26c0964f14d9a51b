"""Formulas of the Markov-WZ construction, kept as text.

Entries are written in ``a2`` = a^2, ``b2`` = b^2 and ``n1`` = n + 1.
The symbolic certifier parses these strings, rewrites
them through e1 = a^2 + b^2, e2 = a^2 b^2, and checks them; mutating any
entry must make certification fail.

Shifted quantities: ``L2``, ``K2``, ``E2``, ``P2`` stand for L(n+1), K(n+1),
E(n+1), P(n+1); ``A1``, ``B1``, ``C1`` for A(n+1), B(n+1), C(n+1).  ``P`` is
the B0-bearing product (-1)^n B0 n! / 2^(n+1) prod_{m<=n} ((m^2-a^2-b^2)^2
- 4a^2b^2) / (2m+1).
"""

from types import MappingProxyType

#: coefficient system, each entry "lhs = rhs"
RELATIONS = MappingProxyType({
    "C_rel": "C = (4*n1-3)*L",
    "B_rel": "B = (4*n1-2)*K - (10*n1^2-3)*L",
    "A_rel": "A = (4*n1-1)*E - (10*n1^2-1)*K + (20*n1^3 + 2*n1*(a2+b2) - 1)*L",
    "D_rel": "4*D = 10*n1*E - (20*n1^2 + 2*a2 + 2*b2)*K + (35*n1^3 + 11*n1*(a2+b2))*L",
    "L_step": (
        "2*(4*n1+1)*L2 = 2*n1*(5*n1^2 - 2*a2 - 2*b2)*E - 2*n1^2*(15*n1^2 - 6*(a2+b2))*K"
        " + n1*(63*n1^4 - 17*n1^2*(a2+b2) - 4*(a2^2+b2^2))*L"
    ),
    "K_step": (
        "2*(4*n1+2)*K2 - 2*(10*n1^2 + 20*n1 + 7)*L2"
        " = 2*n1^2*(5*n1^2 - 2*(a2+b2))*E"
        " - 2*(16*n1^5 - 8*n1^3*(a2+b2) + n1*(a2-b2)^2)*K"
        " + (70*n1^6 - 31*n1^4*(a2+b2) + n1^2*(3*a2^2 + 3*b2^2 - 14*a2*b2))*L"
    ),
    "E_step": (
        "4*(20*(n1+1)^3 + 2*(n1+1)*(a2+b2) - 1)*L2 - 4*(10*n1^2 + 20*n1 + 9)*K2 + 4*(4*n1+3)*E2"
        " = (6*n1^5 - 6*n1^3*(a2+b2) + 16*a2*b2*n1)*E"
        " - (20*n1^6 - 22*n1^4*(a2+b2) + 2*n1^2*(a2^2 + b2^2 + 22*a2*b2))*K"
        " + (45*n1^7 - 48*n1^5*(a2+b2) + n1^3*(3*a2^2 + 3*b2^2 + 86*a2*b2)"
        " + 8*a2*b2*n1*(a2+b2))*L"
    ),
})

#: telescoping relation divided by the kernel, "lhs = rhs", polynomial in k
TELESCOPING = (
    "((n+k+2)^2-a2)*((n+k+2)^2-b2)*(A + B*(k+1) + C*(k+1)^2) - A1 - B1*(k+1) - C1*(k+1)^2"
    " = ((n+k+2)^2-a2)*((n+k+2)^2-b2)*(D + E*k + K*k^2 + L*k^3)"
    " - ((k+1)^2-a2)*((k+1)^2-b2)*(D + E*(k+1) + K*(k+1)^2 + L*(k+1)^3)"
)

#: closed forms in terms of L(n), L(n+1) and the product P
CLOSED_FORMS = MappingProxyType({
    "K_closed": "K = 7/2*n1*L + P",
    "E_closed": (
        "E = (4*n1+1)/(n1*(5*n1^2 - 2*a2 - 2*b2))*L2"
        " + (42*n1^4 - 25*n1^2*(a2+b2) + 4*(a2^2+b2^2))/(2*(5*n1^2 - 2*a2 - 2*b2))*L"
        " + 3*n1*P"
    ),
    "D_closed": (
        "D = ((40*n1+10)*L2 + (35*n1^5 - 35*n1^3*(a2+b2) + 4*n1*(3*a2^2 + 3*b2^2 - 4*a2*b2))*L)"
        "/(4*(5*n1^2 - 2*a2 - 2*b2))"
        " + (5*n1^2 - a2 - b2)/2*P"
    ),
})

#: first-order recurrence of the B0 product
P_SHIFT = "P2 = -n1*((n1^2 - a2 - b2)^2 - 4*a2*b2)/(2*(2*n1+1))*P"

#: coefficients of the second-order recurrence for L
P_POLY = (
    "30*n^7 + 105*n^6 + n^5*(145 - 52*(a2+b2)) + n^4*(100 - 130*(a2+b2))"
    " + n^3*(35 - 124*(a2+b2) + 56*(a2^2+b2^2) - 208*a2*b2)"
    " + n^2*(5 - 56*(a2+b2) + 84*(a2^2+b2^2) - 312*a2*b2)"
    " + n*(80*a2*b2*(a2+b2) - 16*(a2^3+b2^3) + 48*(a2^2+b2^2-3*a2*b2) - 14*(a2+b2))"
    " + (10*(a2-b2)^2 - 2*(a2+b2) + 40*a2*b2*(a2+b2) - 8*(a2^3+b2^3))"
)
Q_POLY = (
    "n^8 - 6*n^6*(a2+b2) + n^4*(9*(a2^2+b2^2) + 30*a2*b2)"
    " - n^2*(28*a2*b2*(a2+b2) + 4*(a2^3+b2^3)) + 16*a2*b2*(a2-b2)^2"
)
L_RECURRENCE = (
    "4*(4*n+3)*(4*n+5)*(5*n^2 - 2*a2 - 2*b2)*Lnext + 2*(n+1)*p*Lcur"
    " - n*(n+1)*(5*(n+1)^2 - 2*a2 - 2*b2)*q*Lprev"
)
L1_INIT = (
    "(1/3 - 2/15*(a2+b2))*A0"
    " + (1/6*(a2+b2) - 2/15*(a2^2 + b2^2 - 4*a2*b2) - 1/30)*C0"
)

#: numerator polynomial r(n) of the two-parameter accelerated series, in x2 = x^2 and y4 = y^4
R_POLY = (
    "205*n^6 - 160*n^5 + (32 - 62*x2)*n^4 + 40*x2*n^3"
    " + (x2^2 - 8*x2 - 25*y4)*n^2 + 10*y4*n + y4*(x2 - 2)"
)
