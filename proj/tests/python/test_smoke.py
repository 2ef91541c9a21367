"""Smoke tests for the python bindings over the C++ core."""

import json

import pytest

import skygeo


def test_normalize_longitude():
    assert skygeo.normalize_longitude(180.0) == 180.0
    assert skygeo.normalize_longitude(-180.0) == 180.0
    assert skygeo.normalize_longitude(541.0) == -179.0


def test_ecef_round_trip():
    c = skygeo.GeoCoordinate(37.3, -121.9)
    p = skygeo.geodetic_to_ecef(c)
    assert p.x == pytest.approx(-2684406.860194322, abs=1e-6)
    assert p.y == pytest.approx(-4312679.971599423, abs=1e-6)
    assert p.z == pytest.approx(3843930.462026719, abs=1e-6)
    back = skygeo.ecef_to_geodetic(p)
    assert back.lat_deg == pytest.approx(37.3, abs=1e-9)
    assert back.lon_deg == pytest.approx(-121.9, abs=1e-9)


def test_degenerate_inverse_raises():
    with pytest.raises(skygeo.SkygeoError):
        skygeo.ecef_to_geodetic(skygeo.EcefPoint(0.0, 0.0, 0.0))


def _place(name, lat, lon, half, weight):
    return skygeo.WeightedPlace(
        name,
        skygeo.GeoCoordinate(lat, lon),
        skygeo.GeoBoundingBox(lat - half, lat + half, lon - half, lon + half),
        weight,
    )


def test_weighted_centroid_identity_and_frozen_value():
    single = skygeo.weighted_centroid([_place("x", 10.0, 20.0, 0.1, 1)])
    assert single.lat_deg == pytest.approx(10.0, abs=1e-9)
    assert single.lon_deg == pytest.approx(20.0, abs=1e-9)

    three = skygeo.weighted_centroid(
        [
            _place("nyc", 40.7, -74.0, 0.2, 3),
            _place("la", 34.1, -118.2, 0.2, 1),
            _place("chi", 41.9, -87.6, 0.2, 2),
        ]
    )
    assert three.lat_deg == pytest.approx(41.12318739026365, abs=1e-9)
    assert three.lon_deg == pytest.approx(-86.12699824971692, abs=1e-9)


def test_gipsy_containment_prefers_the_inner_box():
    country = _place("country", 10.0, 10.0, 10.0, 3)
    city = _place("city", 9.0, 9.0, 1.0, 1)
    located = skygeo.gipsy_locate([country, city])
    assert located.lat_deg == pytest.approx(9.0, abs=1e-9)
    assert located.lon_deg == pytest.approx(9.0, abs=1e-9)

    cells = skygeo.elevation_cells([country, city])
    assert max(cell["elevation"] for cell in cells) == 4


def test_extraction_counts(tmp_path):
    gaz_file = tmp_path / "places.tsv"
    gaz_file.write_text(
        "Paris\t48.85\t2.35\t48.0\t49.5\t1.5\t3.5\n"
        "New York\t40.7\t-74.0\t40.4\t41.0\t-74.3\t-73.6\n"
        "York\t53.96\t-1.08\t53.8\t54.1\t-1.3\t-0.9\n"
    )
    gazetteer = skygeo.load_gazetteer(str(gaz_file))
    assert len(gazetteer) == 3
    assert gazetteer.lookup("paris") is not None

    places = skygeo.extract_weighted_places("New York and York, then Paris in PARIS.", gazetteer)
    weights = {p.name: p.weight for p in places}
    assert weights == {"New York": 1, "York": 1, "Paris": 2}


def test_compute_metrics_reproduces_the_table():
    row = skygeo.compute_metrics(84, 1000, 17, "agentic")
    assert row["yield_pct"] == pytest.approx(8.4)
    assert round(row["improvement_over_baseline"], 1) == 4.9
    base = skygeo.compute_metrics(17, 1000)
    assert base["yield_pct"] == pytest.approx(1.7)
    assert base["improvement_over_baseline"] is None


def test_dataset_stats(tmp_path):
    manifest = tmp_path / "manifests.jsonl"
    records = []
    for idx, frames in enumerate([2, 2, 3, 5]):
        records.append(
            {
                "sequence_id": f"seq-{idx}",
                "article_id": f"a-{idx}",
                "imagery_source": "synthetic",
                "frames": [
                    {
                        "timestamp": f"2024-01-{day + 1:02d}T10:00:00Z",
                        "scene_id": f"s{idx}-{day}",
                        "cloud_fraction": 0.1,
                        "image_ref": "synthetic://x",
                    }
                    for day in range(frames)
                ],
                "caption": {"text": "change", "referenced_frames": []},
                "confirmed": idx < 3,
                "event_dates": {"start": "2024-01-01", "end": "2024-01-20"},
            }
        )
    manifest.write_text("".join(json.dumps(r) + "\n" for r in records))

    stats = skygeo.dataset_stats(str(manifest))
    assert stats["total_sequences"] == 4
    assert stats["confirmed_events"] == 3
    assert stats["avg_images_per_sequence_rounded"] == 3


def test_run_corpus_over_the_sample_world(sample_dir):
    outcome = skygeo.run_corpus(
        str(sample_dir / "articles.jsonl"),
        str(sample_dir / "config.json"),
        ["centroid", "agentic"],
    )
    report = outcome["report"]
    methods = [row["method"] for row in report["rows"]]
    assert methods == ["centroid", "agentic"]
    agentic = report["rows"][1]
    assert agentic["detections"] == 2
    statuses = {r["article_id"]: r["status"] for r in outcome["results"] if r["method"] == "agentic"}
    assert statuses["art-001"] == "detected"
    assert statuses["art-003"] == "no_candidates"
