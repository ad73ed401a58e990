"""16-point Gauss-Legendre rule on [-1, 1], shared by both kernel backends."""

GL16_NODES = (
    -0.9894009349916499,
    -0.9445750230732326,
    -0.8656312023878318,
    -0.755404408355003,
    -0.6178762444026438,
    -0.45801677765722737,
    -0.2816035507792589,
    -0.09501250983763745,
    0.09501250983763745,
    0.2816035507792589,
    0.45801677765722737,
    0.6178762444026438,
    0.755404408355003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
)

GL16_WEIGHTS = (
    0.027152459411754037,
    0.062253523938647706,
    0.09515851168249259,
    0.12462897125553403,
    0.14959598881657676,
    0.16915651939500262,
    0.1826034150449236,
    0.18945061045506859,
    0.18945061045506859,
    0.1826034150449236,
    0.16915651939500262,
    0.14959598881657676,
    0.12462897125553403,
    0.09515851168249259,
    0.062253523938647706,
    0.027152459411754037,
)
