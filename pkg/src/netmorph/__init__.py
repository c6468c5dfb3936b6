"""Network generation and topology diagnostics for social-network analysis."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    GraphError,
    EdgeListParseError,
    LoadReport,
    NodeIdMap,
    UNREACHABLE,
    bfs_distances,
    connected_components,
    degree,
    load_edge_list,
    undirected_view,
    write_edge_list,
)
from .generators import (
    GenSpec,
    GenSpecError,
    gen_barabasi_albert,
    gen_erdos_renyi,
    gen_holme_kim,
    gen_newman_watts_strogatz,
    gen_watts_strogatz,
    generate,
)
from .metrics import (
    DegreeHistogram,
    FitError,
    HopPlot,
    HopPlotError,
    PowerLawFit,
    ccdf,
    closeness_centrality,
    clustering_coefficient,
    degree_histogram,
    effective_diameter,
    fit_power_law,
    hop_plot,
)
from .community import (
    CommunitySizeDistribution,
    ModularityError,
    Partition,
    ResolutionAdvisory,
    SizeLimitError,
    community_sizes,
    edge_betweenness,
    girvan_newman,
    louvain,
    modularity,
    resolution_advisory,
)
