"""Ranging, room assignment, the windowed pipeline, and accuracy reporting."""

import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cinnamon.errors import ValidationError
from cinnamon.localization import (
    KalmanParams,
    assign_room,
    evaluate_localization,
    localize_stream,
    rssi_to_distance,
    slant_to_horizontal,
)
from cinnamon.simulate import (
    ChannelModel,
    default_scenario,
    emit_rssi,
    simulate_track,
)
from cinnamon.simulate.types import (
    Anchor,
    GroundTruthTrack,
    Room,
    RoomLayout,
    RssiSample,
    TrackSample,
)

GOLDEN = json.loads(
    (Path(__file__).parent / "data" / "golden_localization_seed42.json").read_text()
)


class TestRanging:
    def test_p0_inverts_to_reference_distance(self):
        channel = ChannelModel(p0_dbm=-45.0, d0_m=1.0)
        assert rssi_to_distance(-45.0, channel) == pytest.approx(1.0)

    def test_closed_form_ten_meters(self):
        channel = ChannelModel(p0_dbm=-45.0, d0_m=1.0, path_loss_exponent=2.0)
        assert rssi_to_distance(-65.0, channel) == pytest.approx(10.0)

    def test_round_trip_with_emitter_over_distance_grid(self):
        channel = ChannelModel(shadow_sigma_db=0.0, outlier_prob=0.0)
        for d in np.linspace(1.0, 15.0, 57):
            rssi = channel.expected_rssi(d)
            assert abs(rssi_to_distance(rssi, channel) - d) < 1e-9

    def test_slant_projection(self):
        assert slant_to_horizontal(2.5, 2.5) == pytest.approx(0.0, abs=1e-8)
        assert slant_to_horizontal(5.0, 3.0) == pytest.approx(4.0)
        assert slant_to_horizontal(2.0, 2.5) > 0  # noisy slant below mount height


class TestAssignRoom:
    def test_centroid_maps_to_its_room(self, scenario):
        assert assign_room((7.0, 2.0), scenario.layout) == "kitchen"

    def test_outside_returns_none(self, scenario):
        assert assign_room((100.0, 100.0), scenario.layout) is None

    def test_shared_wall_goes_to_first_listed_room(self):
        layout = RoomLayout(
            rooms=(
                Room("a", ((0, 0), (2, 0), (2, 2), (0, 2))),
                Room("b", ((2, 0), (4, 0), (4, 2), (2, 2))),
            ),
            anchors=(),
        )
        assert assign_room((2.0, 1.0), layout) == "a"
        flipped = RoomLayout(rooms=layout.rooms[::-1], anchors=())
        assert assign_room((2.0, 1.0), flipped) == "b"

    @settings(max_examples=100, deadline=None)
    @given(x=st.floats(-1, 10), y=st.floats(-1, 9), perm=st.permutations([0, 1, 2]))
    def test_interior_assignment_stable_under_room_permutation(self, x, y, perm):
        layout = default_scenario().layout
        from cinnamon.geometry import point_on_boundary

        if any(point_on_boundary((x, y), r.polygon) for r in layout.rooms):
            return  # boundary points follow the declared listing-order tie-break
        permuted = RoomLayout(rooms=tuple(layout.rooms[i] for i in perm), anchors=layout.anchors)
        assert assign_room((x, y), layout) == assign_room((x, y), permuted)


def _stationary_setup(xy=(1.0, 1.0), duration=10.0):
    layout = RoomLayout(
        rooms=(Room("room", ((0, 0), (6, 0), (6, 5), (0, 5))),),
        anchors=(
            Anchor("a1", (1.0, 1.0), 2.5),
            Anchor("a2", (5.0, 1.0), 2.5),
            Anchor("a3", (3.0, 4.0), 2.5),
        ),
    )
    track = GroundTruthTrack(
        samples=tuple(
            TrackSample(t=k / 10.0, position=xy, room_id="room")
            for k in range(int(duration * 10))
        )
    )
    return layout, track


class TestLocalizeStream:
    def test_noiseless_stationary_recovers_position(self):
        layout, track = _stationary_setup()
        channel = ChannelModel(shadow_sigma_db=0.0, outlier_prob=0.0)
        samples = emit_rssi(track, layout, channel, 10.0, seed=0)
        estimates = localize_stream(samples, layout, channel, None, window_s=2.0)
        assert len(estimates) == 5
        for est in estimates:
            assert est.xy == pytest.approx((1.0, 1.0), abs=1e-6)
            assert est.room_id == "room"
            assert est.anchors_used == 3

    def test_noiseless_with_filter_also_exact(self):
        layout, track = _stationary_setup()
        channel = ChannelModel(shadow_sigma_db=0.0, outlier_prob=0.0)
        samples = emit_rssi(track, layout, channel, 10.0, seed=0)
        estimates = localize_stream(samples, layout, channel, KalmanParams(), window_s=2.0)
        for est in estimates:
            assert est.xy == pytest.approx((1.0, 1.0), abs=1e-6)

    def test_window_with_two_anchors_yields_no_position(self):
        layout, _ = _stationary_setup()
        samples = [
            RssiSample(t=0.1, anchor_id="a1", wearable_id="w", rssi_dbm=-50.0),
            RssiSample(t=0.2, anchor_id="a2", wearable_id="w", rssi_dbm=-55.0),
        ]
        channel = ChannelModel()
        estimates = localize_stream(samples, layout, channel, None, window_s=2.0)
        assert len(estimates) == 1
        assert estimates[0].xy is None
        assert estimates[0].room_id is None
        assert estimates[0].anchors_used == 2

    def test_filtered_beats_raw_on_default_scenario_seed_42(self, scenario):
        track = simulate_track(scenario, 42)
        samples = emit_rssi(track, scenario.layout, scenario.channel, scenario.rssi_rate_hz, 42)
        raw = evaluate_localization(
            localize_stream(samples, scenario.layout, scenario.channel, None, 2.0), track
        )
        filtered = evaluate_localization(
            localize_stream(samples, scenario.layout, scenario.channel, KalmanParams(), 2.0),
            track,
        )
        assert filtered.room_accuracy >= raw.room_accuracy

    def test_unknown_anchor_in_stream_rejected(self, scenario):
        samples = [RssiSample(t=0.0, anchor_id="ghost", wearable_id="w", rssi_dbm=-50.0)]
        with pytest.raises(ValidationError, match="ghost"):
            localize_stream(samples, scenario.layout, scenario.channel, None, 2.0)


class TestEvaluateLocalization:
    def _estimates_from_track(self, track, room=None, offset=(0.0, 0.0)):
        from cinnamon.localization import PositionEstimate

        return [
            PositionEstimate(
                t=s.t,
                xy=(s.position[0] + offset[0], s.position[1] + offset[1]),
                residual_rms_m=0.0,
                room_id=room if room is not None else s.room_id,
                anchors_used=3,
            )
            for s in track.samples
        ]

    def test_perfect_estimates_score_one(self, scenario):
        track = simulate_track(scenario, 1)
        report = evaluate_localization(self._estimates_from_track(track), track)
        assert report.room_accuracy == 1.0
        assert report.mean_position_error_m == pytest.approx(0.0, abs=1e-12)

    def test_all_wrong_rooms_score_zero(self, scenario):
        track = simulate_track(scenario, 1)
        report = evaluate_localization(
            self._estimates_from_track(track, room="nowhere"), track
        )
        assert report.room_accuracy == 0.0

    def test_confusion_consistency(self, scenario):
        track = simulate_track(scenario, 2)
        report = evaluate_localization(self._estimates_from_track(track), track)
        total = sum(sum(row.values()) for row in report.per_room_confusion.values())
        diag = sum(
            report.per_room_confusion.get(room, {}).get(room, 0)
            for room in report.per_room_confusion
        )
        assert total == report.n_matched
        assert report.room_accuracy == pytest.approx(diag / total)

    def test_no_matching_times_raises(self, scenario):
        track = simulate_track(scenario, 1)
        shifted = [
            e
            for e in self._estimates_from_track(track)
        ]
        late = [e.__class__(t=e.t + 10_000.0, xy=e.xy, residual_rms_m=e.residual_rms_m,
                            room_id=e.room_id, anchors_used=e.anchors_used) for e in shifted]
        with pytest.raises(ValidationError, match="matched"):
            evaluate_localization(late, track)

    def test_golden_report_for_seed_42(self, scenario):
        track = simulate_track(scenario, 42)
        samples = emit_rssi(track, scenario.layout, scenario.channel, scenario.rssi_rate_hz, 42)
        filtered = evaluate_localization(
            localize_stream(samples, scenario.layout, scenario.channel, KalmanParams(), 2.0),
            track,
        )
        raw = evaluate_localization(
            localize_stream(samples, scenario.layout, scenario.channel, None, 2.0), track
        )
        assert filtered.room_accuracy == pytest.approx(GOLDEN["filtered"]["room_accuracy"], abs=1e-12)
        assert raw.room_accuracy == pytest.approx(GOLDEN["raw"]["room_accuracy"], abs=1e-12)
        assert filtered.mean_position_error_m == pytest.approx(
            GOLDEN["filtered"]["mean_position_error_m"], rel=1e-9
        )
        assert filtered.median_position_error_m == pytest.approx(
            GOLDEN["filtered"]["median_position_error_m"], rel=1e-9
        )
        assert filtered.n_estimates == GOLDEN["filtered"]["n_estimates"]
