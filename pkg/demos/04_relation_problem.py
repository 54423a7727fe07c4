"""The two-round relation problem and its one-round sampling variant.

Round 1 swaps entanglement between two randomly chosen sites and reports
the Bell outcomes.  The user turns those into a syndrome; round 2 corrects
the Pauli frame and plays the game, which then succeeds on every instance.
Without the correction round, the clean-frame branch alone (probability
1/64) must satisfy the relation, and it does.
"""
from collections import Counter

from bcsmagic import build_game_bcs, make_rng, permutation_solution
from bcsmagic.shallow import (
    check_relation,
    compute_syndrome,
    random_instance,
    run_round1,
    run_round2,
    run_sampling_trial,
)

game = build_game_bcs(8, modified=True)
sol = permutation_solution(game)
rng = make_rng(404)

inst = random_instance(game, N=12, rng=rng)
print(f"instance: sites j={inst.j}, k={inst.k} of N={inst.N}, "
      f"constraint {inst.alpha}, variable {inst.beta}")

transcript = run_round1(inst, rng)
print("round-1 Pauli frame per layer (z, x):", transcript.pauli_frame)
p_a, p_b = compute_syndrome(transcript, inst.j, inst.k)
print("syndrome p^A =", p_a, " p^B =", p_b)

outputs = run_round2(game, inst, transcript, sol, rng)
print("round-2 outputs: r_a =", outputs.r_a, " r_b =", outputs.r_b)
print("relation satisfied:", check_relation(inst, outputs, game))

trials = 3000
ok = 0
for _ in range(trials):
    inst = random_instance(game, N=200, rng=rng)
    t = run_round1(inst, rng)
    ok += check_relation(inst, run_round2(game, inst, t, sol, rng), game)
print(f"\n{ok}/{trials} random corrected instances satisfy the relation")

cases = Counter()
sampling_trials = 20000
for _ in range(sampling_trials):
    inst = random_instance(game, N=30, rng=rng)
    cases[run_sampling_trial(game, inst, sol, rng).case] += 1
print(f"\nsampling variant over {sampling_trials} trials: {dict(cases)}")
print(f"clean-frame rate {cases['case1'] / sampling_trials:.5f} vs 1/64 = {1 / 64:.5f}; "
      f"invalid trials: {cases['invalid']}")
