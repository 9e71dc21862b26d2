"""Concept lattices over document metadata: build, measure, browse, publish."""

from .context import (
    AttributeToken,
    ConceptView,
    FormalContext,
    MergeMap,
    Relator,
    apposition,
    context_from_rows,
    purify,
    reduce_context,
    token,
    transpose,
    view,
)
from .lattice import (
    Concept,
    ConceptLattice,
    NeighborhoodLattice,
    build_lattice,
    irreducibles,
    join,
    leq,
    meet,
    meet_restrict,
    readout,
)
from .linkage import (
    CrispLink,
    LinkageMatrix,
    Mode,
    counted_attributes,
    counted_objects,
    crispify,
    export_links,
    ext_difference,
    ext_linkage,
    ext_similarity,
    int_diff_measure,
    int_difference,
    int_linkage,
    int_similarity,
    linkage_matrix,
)
from .scaling import (
    Comparator,
    ConceptualScale,
    MetadataRecord,
    ScaleKind,
    apply_scale,
    interpret,
    parse_records,
    parse_scales,
    summarize_document,
)
from .hyperize import (
    HyperizationConfig,
    Orientation,
    WebObjectGraph,
    emit_web,
    enrich,
    hyperize,
    ingest_link_graph,
    parse_graph_file,
    project_links_to_objects,
)
from .interchange import (
    ClifDocument,
    FcifDocument,
    clif_to_fcif,
    context_to_fcif,
    emit_clif,
    emit_fcif,
    fcif_to_clif,
    fcif_to_context,
    lattice_to_clif,
    parse_clif,
    parse_fcif,
)
from .browsing import (
    BrowseSession,
    Display,
    DisplayLabel,
    RankedOrder,
    Scope,
    extensional_query,
    intensional_query,
    new_session,
    rank_difference,
    rank_similarity,
    set_mode,
    set_scope,
    threshold_filter,
    transition,
)
from .workspace import (
    WorkspaceStore,
    load_context_file,
    parse_views,
    pipeline_lattice,
)

__version__ = "0.1.0"
