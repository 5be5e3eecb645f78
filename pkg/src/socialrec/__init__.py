"""Diffusion recommenders on coupled user-object and user-group networks."""
from .binning import CurvePoint, DEFAULT_BIN_SCALE, LOG10_BIN_SCALE, sqrt_log_bin, sqrt_log_binned_mean
from .graph import LEFT, RIGHT, BipartiteGraph, CoupledDataset, LabeledGraph, build_graph, coupled_from_indices
from .similarity import (SimilarityPairSample, degree_correlation, jaccard_users, salton_items,
                         salton_users, similarity_correlation_sample)
from .influence import (ExcludedUserError, NoMembershipError, UndefinedDistributionError,
                        influence, influence_curve, influence_distribution, mean_influence,
                        mean_influence_all, p_object_given_group)
from .recommenders import (ALGORITHMS, BlendConfig, ScoreVector, blend_scores, get_scorer, hdh_scores,
                           icf_scores, md_scores, random_scores, recommend_top, sd_scores, ucf_scores)
from .evaluation import (CumulativePoint, EvaluationResult, ProtocolError, RankingScore, SplitPair,
                         SweepRow, SweepResult, cumulative_rs_curve, evaluate, ranking_score, split, sweep)
from .dataio import EdgeParseError, EmptyDatasetError, IngestReport, assemble_dataset, load_dataset, parse_edge_file
from .synth import SynthConfig, synth_generate

__version__ = "0.1.0"
