# %% [markdown]
# # Recognizing A ⊙ U(L) ⊙ A
#
# `cm_recognize` certifies, up to a chosen depth, that a bialgebroid is
# isomorphic to A ⊙ U(L) ⊙ A for some anchored Lie algebra L.

# %%
from cmbialg.algebra import commutator_lie, derivation_lie, dual_numbers, matrix_algebra
from cmbialg.anchored_lie import restrict
from cmbialg.cm_bialgebroid import build_cm, endomorphism_bialgebroid
from cmbialg.exactlin import ONE, Subspace, q
from cmbialg.universal import base_bialgebroid, cm_recognize


def show(v):
    print(v.label)
    for c in v.conditions:
        print(f"  {c.name:22s} {c.status:12s} {c.detail}")


# %% [markdown]
# End(Mat_2): η is bijective, so the bialgebroid is A ⊙ U(0) ⊙ A.

# %%
show(cm_recognize(endomorphism_bialgebroid(matrix_algebra(2)), 2))

# %% [markdown]
# A truncated construction recognizes itself at its own degree.

# %%
m2 = matrix_algebra(2)
line = restrict(commutator_lie(m2), Subspace.span(4, [{0: ONE}]), name="e11")
show(cm_recognize(build_cm(m2, line, 2), 2))

# %% [markdown]
# End(Q[ε]/(ε²)) is not primitively generated, and a commutative algebra over
# itself has η far from injective.

# %%
show(cm_recognize(endomorphism_bialgebroid(dual_numbers()), 2))
show(cm_recognize(base_bialgebroid(dual_numbers()), 2))

# %% [markdown]
# Doubling the coproduct breaks the counit law; the verdict carries the witness.

# %%
B = build_cm(dual_numbers(), derivation_lie(dual_numbers()), 3)
v = cm_recognize(B.with_delta(B.delta.scale(q(2))), 3)
show(v)
print("witness:", v.condition("axioms").witness)
