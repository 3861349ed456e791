"""Gap distribution on 50 disjoint copies of the seven-vertex example."""
import sys

from irmatch.experiments import ExperimentConfig, run_veto
from irmatch.generators import disjoint_copies, gen_figure1
from irmatch.ownership import PlayerProfile

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
cfg = ExperimentConfig(disjoint_copies(gen_figure1(), 50), PlayerProfile.uniform(2),
                       trials=trials, seed=1, delta=0.01)
report = run_veto(cfg)
agg = report.aggregates

print("opt(G):", agg["opt_size"], "| trials:", trials)
print("bound (2L+1)sqrt(opt ln(4k/delta)):", round(agg["theorem1_bound"], 1))
print("largest gap seen:", agg["max_gap"], "| 99% quantile:", agg["max_gap_quantile"])
print("mean gap per player:", agg["mean_gap_0"], agg["mean_gap_1"])
print("veto frequency:", agg["veto_frequency"], "| mean loss:", agg["mean_loss"])
print("corollary bound on the loss:", round(agg["corollary1_bound"], 1))
