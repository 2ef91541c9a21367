"""Geocode news-described events and verify them in satellite imagery."""

from ._core import (
    EcefPoint,
    Gazetteer,
    GeoBoundingBox,
    GeoCoordinate,
    SkygeoError,
    WeightedPlace,
    __version__,
    compute_metrics,
    dataset_stats,
    ecef_to_geodetic,
    elevation_cells,
    extract_weighted_places,
    geodetic_to_ecef,
    gipsy_locate,
    load_gazetteer,
    normalize_longitude,
    run_corpus,
    split_antimeridian,
    weighted_centroid,
)

__all__ = [
    "EcefPoint",
    "Gazetteer",
    "GeoBoundingBox",
    "GeoCoordinate",
    "SkygeoError",
    "WeightedPlace",
    "__version__",
    "compute_metrics",
    "dataset_stats",
    "ecef_to_geodetic",
    "elevation_cells",
    "extract_weighted_places",
    "geodetic_to_ecef",
    "gipsy_locate",
    "load_gazetteer",
    "normalize_longitude",
    "run_corpus",
    "split_antimeridian",
    "weighted_centroid",
]
