"""Shipped numeric constants.

EULER_GAMMA is the Euler-Mascheroni constant to 30 decimal places; it
enters the divisor-sum main term x/q * (log(x/q^2) + 2*gamma - 1).
PI_DIGITS carries 309 decimal places of pi so a big-rational realization
of pi can be certified without any floating-point trust.
"""

EULER_GAMMA_STR = "0.577215664901532860606512090082"
EULER_GAMMA = float(EULER_GAMMA_STR)

# 309 decimal places.
PI_DIGITS = (
    "3."
    "1415926535897932384626433832795028841971693993751058209749445923"
    "0781640628620899862803482534211706798214808651328230664709384460"
    "9550582231725359408128481117450284102701938521105559644622948954"
    "9303819644288109756659334461284756482337867831652712019091456485"
    "66923460348610454326648213393607260249141273724587007"
)
