# a catalyses c unless b is around; everything unsustained degrades.
species: a b c
reaction r1: {a} / {b} -> {c}
reaction r2: {c} -> {a,c}
