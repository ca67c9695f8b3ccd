"""Top-k centrality rank stability under edge-addition noise.

Measure how stable a network's high-centrality vertex set is when random
absent edges appear, and predict that stability from local structure alone.
"""

__version__ = "0.1.0"

from rankstab.centrality import (  # noqa: F401
    CentralityVector,
    Metric,
    Ranking,
    betweenness_centrality,
    centrality,
    closeness_centrality,
    degree_centrality,
    rank,
    top_k,
)
from rankstab.graph import (  # noqa: F401
    Graph,
    GraphError,
    GraphStats,
    complement_size,
    graph_stats,
    induced_subgraph,
    load_edge_list,
    write_edge_list,
)
from rankstab.perturb import (  # noqa: F401
    NoiseSpec,
    PerturbedTrial,
    expected_additions_per_vertex,
    perturb,
    sweep,
)
from rankstab.stability import (  # noqa: F401
    StabilityClass,
    StabilityReport,
    classify,
    dominant_stability,
    jaccard,
    topk_stability,
)
from rankstab.structure import (  # noqa: F401
    RichClubStats,
    StableClustering,
    band_classify,
    cluster_boundary_ks,
    common_top_neighbors,
    rich_club_stats,
    stable_clusters,
    subgraph_density,
)
