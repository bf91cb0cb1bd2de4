# %% [markdown]
# # A ⊙ U(L) ⊙ A over the dual numbers
#
# A = Q[ε]/(ε²) with L = Der(A), spanned by D: ε ↦ ε.  We build the truncation
# at PBW degree 3, check the axioms, look at its primitives and map it into
# End(A).

# %%
from cmbialg.algebra import derivation_lie, dual_numbers
from cmbialg.cm_bialgebroid import all_passed, build_cm, check_bialgebroid, prim_decomposition
from cmbialg.exactlin import ONE
from cmbialg.universal import (
    base_representation,
    endomorphism_ring_input,
    representation_to_module,
    smash_quotient,
    universal_ring_map,
    vec_to_mat,
)

A = dual_numbers()
L = derivation_lie(A)
B = build_cm(A, L, 3)
print(B)
print("dim B =", B.bdim, "(4 · 4 PBW monomials)")

# %%
reports = check_bialgebroid(B, "exhaustive")
for name, r in reports.items():
    print(f"{name:22s} {r.checked:6d} checked, {len(r.failures)} failures")
print("all axioms hold:", all_passed(reports))

# %% [markdown]
# Primitives inside A ⊗ F_2(U) ⊗ A: one from L, one of the form s(ε) − t(ε°).

# %%
dec = prim_decomposition(B)
print("prim dim", dec.prim.dim, "=", dec.lie_span.dim, "⊕", dec.st_span.dim, "split ok:", dec.ok)
print("ε of the primitives:", dec.prim.counit_values)

# %%
res = universal_ring_map(A, L, 3, endomorphism_ring_input(L), B)
print("ring map verified:", res.report.ok, f"({res.report.checked} identities, {res.report.skipped} out of range)")
x = B.index(0, 1, 0)  # 1 ⊗ D ⊗ 1
print("image of 1 ⊗ D ⊗ 1:")
print(vec_to_mat(res.matrix.col(x), 2).to_dense())

# %% [markdown]
# M = A with ρ = ω: the module structure is the dot action ξ·a = ε(ξ s(a)).

# %%
ms = representation_to_module(A, L, 3, base_representation(L), B)
agree = all(ms.act({k: ONE}).col(i) == B.dot({k: ONE}, {i: ONE}) for k in range(B.bdim) for i in range(2))
print("module checks:", ms.report.ok, " matches the dot action:", agree)

# %% [markdown]
# A is commutative, so B maps onto the smash product A # U with kernel the ideal
# generated by s − t.

# %%
sm = smash_quotient(A, L, 2)
print("dim B =", sm.source.bdim, " dim A#F_2(U) =", sm.target.bdim, " kernel =", sm.kernel.dim)
print("kernel equals the ideal:", sm.kernel_matches_ideal, " checks:", sm.report.ok)
