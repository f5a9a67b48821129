# tl-calculus: Temperley-Lieb and spectral-algebra engine