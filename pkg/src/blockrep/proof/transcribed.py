"""Long published displays stored verbatim as polynomial strings.

They are parsed on demand and compared against independently derived
expressions, so a copying error and a derivation error can be told apart.
"""

from __future__ import annotations

from functools import lru_cache

from ..exact.poly import MultiPoly, parse_poly

LEMMA1_VARS = ("i", "j", "k", "p", "s", "a", "b0", "bs")

# four-term relation in the unknowns a^{k,s}_{x,0}; keys are the offsets x
FOUR_TERM = {
    "j+p": "((i+j)*(s+1)-k)*(a+p+j*b0)*(a+j+k+p+i*bs)",
    "p": "(k-(i+j)*(s+1))*(a+p+k+j*bs)*(a+p+k+j+i*bs) - (j+k-(s+1)*i)*(k-j*(s+1))*(a+p+k+bs*(i+j))",
    "p+i+j": "(k-(i+j)*(s+1))*(a+p+i*b0)*(a+p+i+j*b0) + (j+k-(s+1)*i)*(k-j*(s+1))*(a+p+b0*(i+j))",
    "i+p": "((i+j)*(s+1)-k)*(a+p+i*b0)*(a+i+k+p+j*bs)",
}

# three-term relations; columns are the unknowns at offsets p-i, p, p+i
THREE_TERM = (
    (
        "(k-2*i*(s+1))*(a+p+k+i*(bs-1))*(a+k+p+i*bs) - (k-i*s)*(k-(s+1)*i)*(a+p+k+i*(2*bs-1))",
        "2*(2*i*(s+1)-k)*(a+p+(b0-1)*i)*(a+p+k+bs*i)",
        "(k-2*i*(s+1))*(a+p+i*b0)*(a+p+i*(b0-1)) + (k-(s+1)*i)*(k-i*s)*(a+p+(2*b0-1)*i)",
    ),
    (
        "-k*(a+p-b0*i)*(a+p+k+i*(bs-1))",
        "k*((a+p+k-bs*i)*(a+p+k+i*(bs-1)) + (a+p+b0*i)*(a+p-(b0-1)*i) - (k-i*(s+2))*(k+i*(s+1)))",
        "-k*(a+p+b0*i)*(a+p+k-i*(bs-1))",
    ),
    (
        "(k+2*i*(s+1))*(a+p-(b0-1)*i)*(a+p-i*b0) + (k+i*s)*(k+(s+1)*i)*(a+p-i*(2*b0-1))",
        "-2*(2*i*(s+1)+k)*(a+p-(b0-1)*i)*(a+p+k-bs*i)",
        "(k+2*i*(s+1))*(a+p+k-i*(bs-1))*(a+p+k-i*bs) - (k+(s+1)*i)*(k+i*s)*(a+p+k-(2*bs-1)*i)",
    ),
)

DELTA_PREFIX = "i^6*k*(s-b0+bs)*(1+s-b0+bs)"

DELTA0 = (
    "4*i^2*(1+s)^2*(-1+b0+bs)*(2*b0+3*s*b0+s^2*b0+b0^2-b0^3+2*bs-s*bs-s^2*bs-2*b0*bs"
    "-2*s*b0*bs-b0^2*bs-3*bs^2+b0*bs^2+bs^3)"
)
DELTA1 = "2*(a+p)*(1+s)*(2+s)*(-2+s+s^2+7*b0+2*s*b0-3*b0^2+5*bs-2*s*bs-6*b0*bs-3*bs^2)"
DELTA2 = (
    "-4+24*b0-19*b0^2+2*b0^3+b0^4+16*bs-34*b0*bs+8*b0^2*bs+2*b0^3*bs-19*bs^2"
    "+14*b0*bs^2+8*bs^3-2*b0*bs^3-bs^4+2*(-2+18*b0-11*b0^2+b0^3+4*bs-15*b0*bs"
    "+3*b0^2*bs-4*bs^2+3*b0*bs^2+bs^3)*s+(3+16*b0-6*b0^2-4*bs-6*b0*bs)*s^2"
    "+2*(2+b0-bs)*s^3+s^4"
)

HARD_VARS = ("a", "b0", "b", "c", "i", "j", "k", "l")

HARD_PREFIX = "(a+b0-c)*i*j*(j-i)*(k-l)*((a+b0)*c*(i+j)+(a+l)*(a+b0+c-1))"

# factor A exactly as displayed, including the undefined symbol b
HARD_A = (
    "(a+b0)*(l+j)*(a+b0+k-l)*i^2"
    "+(2*a^2+b0*j+b0^2*j+b0^2*j^2+b0*k+2*b0*j*k+b0*j^2*k+b0*l-j*l-b0*j^2*l+k*l+j*k*l"
    "-l^2-j*l^2+2*a*b0+3*a^2*j+4*a*b*j+a^2*j^2+2*a*b*j^2+2*a*k+3*a*j*k+a*j^2*k"
    "-a*j*l-a*j^2*l)*i"
    "+(a+a*j+b0*j+l)*(a+a*j+b0*j+k+j*k-j*l)"
)


@lru_cache(maxsize=None)
def poly(text: str, vars: tuple = LEMMA1_VARS) -> MultiPoly:
    return parse_poly(text, vars)
