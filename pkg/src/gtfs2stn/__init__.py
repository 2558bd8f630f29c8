"""gtfs2stn: compile static GTFS feeds into time-expanded spatiotemporal
networks and answer accessibility queries over them."""

from .analysis import (
    CellStat,
    GridDiff,
    GridFrequencyMap,
    GridSpec,
    export_grid_geojson,
    export_grid_table_bytes,
    grid_diff,
    grid_frequency,
    stop_visit_counts,
)
from .build import (
    BuildConfig,
    EventNode,
    Link,
    LinkKind,
    SpatioTemporalNetwork,
    build_network,
    walk_seconds,
)
from .errors import (
    BadDate,
    BadTime,
    CorruptStream,
    DestinationIsolated,
    EmptySelection,
    GridMismatch,
    Gtfs2StnError,
    MalformedRow,
    MissingTable,
    NoSuchStop,
    OriginIsolated,
    StopOutsideGrid,
    Unreached,
    UnknownServiceId,
    UnknownTripId,
    VersionMismatch,
)
from .geo import GeoPoint, haversine_m
from .gtfs import (
    Feed,
    ValidationReport,
    active_service_ids,
    expand_frequencies,
    load_feed,
    trips_for_services,
    validate,
    write_feed,
)
from .isochrone import (
    IsochroneResult,
    isochrone,
    isochrone_geojson,
    isochrone_geojson_bytes,
    isochrone_table_bytes,
)
from .netio import deserialize_network, links_geojson, nodes_geojson, serialize_network
from .profile import (
    JourneyBreakdown,
    JourneyProfile,
    Leg,
    ProfileSample,
    journey_profile,
    profile_document,
    profile_geojson,
    profile_table_bytes,
)
from .router import (
    ArrivalLabels,
    Coord,
    HyperNode,
    StopRef,
    earliest_arrival,
    latest_departure,
    reconstruct_path,
)
from .spatial import SpatialIndex, walk_pairs

__version__ = "0.1.0"
