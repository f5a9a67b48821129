# Algebra layer - diagrams, TL calculus, arrows, A_o(F) side, spectral algebra, graphs