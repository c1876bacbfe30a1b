import math

import pytest
from hypothesis import given, strategies as st

from roadcall import (
    Decision,
    RouteGeometry,
    SpeedProfile,
    Workshop,
    time_to_customer,
    time_to_workshop,
    truck_position,
)

WR, WN, CN = Decision.WORKSHOP_REDUCED, Decision.WORKSHOP_NORMAL, Decision.CUSTOMER_FIRST


def route(workshops, alarm, length=300.0, customer=300.0, customer_offset=0.0):
    return RouteGeometry(
        highway_length=length,
        workshops=tuple(workshops),
        customer_position=customer,
        customer_offset=customer_offset,
        alarm_position=alarm,
    )


SPEEDS = SpeedProfile(
    normal=80.0,
    tow_loaded=30.0,
    tow_unloaded=80.0,
    workshop_reduced=40.0,
    workshop_normal=80.0,
    customer_normal=80.0,
)


class TestTruckPosition:
    def test_customer_first_moves_forward(self):
        geom = route([Workshop("a", 0.0)], alarm=200.0)
        assert truck_position(geom, SPEEDS, CN, 0.5) == pytest.approx(240.0)

    def test_no_motion_at_zero(self):
        for alarm in (0.0, 57.0, 300.0):
            geom = route([Workshop("a", 0.0)], alarm=alarm)
            assert truck_position(geom, SPEEDS, WN, 0.0) == alarm

    def test_workshop_bound_moves_backward(self):
        geom = route([Workshop("a", 0.0)], alarm=100.0)
        assert truck_position(geom, SPEEDS, WR, 1.0) == pytest.approx(60.0)

    def test_customer_first_caps_at_customer(self):
        geom = route([Workshop("a", 0.0)], alarm=200.0)
        horizon = time_to_workshop(geom, SPEEDS, CN)
        assert truck_position(geom, SPEEDS, CN, horizon) == 300.0

    def test_domain_errors(self):
        geom = route([Workshop("a", 0.0)], alarm=100.0)
        with pytest.raises(ValueError):
            truck_position(geom, SPEEDS, WN, -0.1)
        with pytest.raises(ValueError):
            truck_position(geom, SPEEDS, WN, 100.0)

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 300.0))
    def test_monotone_in_time(self, f1, f2, alarm):
        geom = route([Workshop("a", 0.0, 10.0)], alarm=alarm)
        for decision in Decision:
            horizon = time_to_workshop(geom, SPEEDS, decision)
            t1, t2 = sorted((f1 * horizon, f2 * horizon))
            p1 = truck_position(geom, SPEEDS, decision, t1)
            p2 = truck_position(geom, SPEEDS, decision, t2)
            if decision is CN:
                assert p2 >= p1 - 1e-12
            else:
                assert p2 <= p1 + 1e-12


class TestNearestWorkshop:
    def test_single_workshop(self):
        geom = route([Workshop("a", 0.0)], alarm=0.0)
        w, dist = geom.nearest_workshop(240.0)
        assert w.label == "a"
        assert dist == pytest.approx(240.0)

    def test_two_workshops(self):
        geom = route([Workshop("a", 0.0), Workshop("b", 300.0)], alarm=0.0)
        w, dist = geom.nearest_workshop(160.0)
        assert w.label == "b"
        assert dist == pytest.approx(140.0)

    def test_zero_distance_at_access_point(self):
        geom = route([Workshop("a", 120.0)], alarm=0.0)
        assert geom.nearest_workshop(120.0)[1] == 0.0

    def test_tie_breaks_to_lower_position(self):
        geom = route([Workshop("b", 200.0), Workshop("a", 100.0)], alarm=0.0)
        w, dist = geom.nearest_workshop(150.0)
        assert w.label == "a"
        assert dist == pytest.approx(50.0)

    @given(st.floats(0.0, 300.0), st.floats(0.0, 300.0))
    def test_distance_is_lipschitz(self, p1, p2):
        geom = route(
            [Workshop("a", 0.0, 23.0), Workshop("b", 180.0, 5.0), Workshop("c", 300.0)],
            alarm=0.0,
        )
        d1 = geom.nearest_workshop(p1)[1]
        d2 = geom.nearest_workshop(p2)[1]
        assert abs(d1 - d2) <= abs(p1 - p2) + 1e-9

    @given(st.floats(1.0, 299.0), st.floats(0.0, 40.0))
    def test_switch_at_midpoint_with_equal_offsets(self, position, offset):
        length = 300.0
        geom = route(
            [Workshop("a", 0.0, offset), Workshop("b", length, offset)], alarm=0.0
        )
        w, _ = geom.nearest_workshop(position)
        if position < length / 2:
            assert w.label == "a"
        elif position > length / 2:
            assert w.label == "b"
        else:
            assert w.label == "a"  # tie goes to the lower position


class TestTravelTimes:
    def test_workshop_normal(self):
        geom = route([Workshop("a", 0.0)], alarm=100.0)
        assert time_to_workshop(geom, SPEEDS, WN) == pytest.approx(1.25)

    def test_alarm_at_workshop(self):
        geom = route([Workshop("a", 0.0)], alarm=0.0)
        assert time_to_workshop(geom, SPEEDS, WR) == 0.0

    def test_customer_first_includes_return_leg(self):
        geom = route([Workshop("a", 0.0)], alarm=200.0)
        assert time_to_workshop(geom, SPEEDS, CN) == pytest.approx(5.0)
        assert time_to_customer(geom, SPEEDS) == pytest.approx(1.25)

    @given(st.floats(0.0, 300.0), st.floats(0.0, 50.0))
    def test_reduced_speed_never_faster(self, alarm, offset):
        geom = route([Workshop("a", 0.0, offset)], alarm=alarm)
        assert (
            time_to_workshop(geom, SPEEDS, WR)
            >= time_to_workshop(geom, SPEEDS, WN) - 1e-12
        )


class TestValidation:
    def test_workshop_position_outside_highway(self):
        with pytest.raises(ValueError, match="highway_position"):
            route([Workshop("a", 400.0)], alarm=0.0)

    def test_negative_offset(self):
        with pytest.raises(ValueError, match="offset"):
            route([Workshop("a", 0.0, -1.0)], alarm=0.0)

    def test_empty_workshops(self):
        with pytest.raises(ValueError, match="nonempty"):
            route([], alarm=0.0)

    def test_alarm_outside_highway(self):
        with pytest.raises(ValueError, match="alarm_position"):
            route([Workshop("a", 0.0)], alarm=301.0)

    def test_tow_speed_ordering(self):
        with pytest.raises(ValueError, match="tow_loaded"):
            SpeedProfile(80.0, 90.0, 80.0, 40.0, 80.0, 80.0)

    def test_reduced_speed_ordering(self):
        with pytest.raises(ValueError, match="workshop_reduced"):
            SpeedProfile(80.0, 30.0, 80.0, 90.0, 80.0, 80.0)

    def test_kink_positions_cover_access_points_and_crossings(self):
        geom = route([Workshop("a", 0.0), Workshop("b", 300.0)], alarm=0.0)
        kinks = geom.distance_kink_positions(0.0, 300.0)
        assert any(math.isclose(k, 150.0) for k in kinks)
