import math
import re

import pytest

from sectorbalance import ChordFan, CircleConfig, area_report, build_partition, render_svg

PI = math.pi


def make_svg(a=1.0, r0=0.5, theta0=0.6, chords=(0.0, PI / 4, PI / 2, 3 * PI / 4)):
    cfg = CircleConfig(a, r0, theta0)
    part = build_partition(ChordFan(chords))
    return render_svg(cfg, part, area_report(cfg, part)), part


class TestRenderSvg:
    def test_byte_identical_reruns(self):
        first, _ = make_svg()
        second, _ = make_svg()
        assert first == second

    def test_standalone_document_structure(self):
        text, part = make_svg()
        assert text.startswith("<svg ")
        assert text.endswith("</svg>\n")
        assert 'xmlns="http://www.w3.org/2000/svg"' in text
        assert 'version="1.1"' in text
        assert 'viewBox="0 0 800 800"' in text

    def test_sector_and_chord_counts(self):
        text, part = make_svg()
        n = part.sector_count // 2
        sector_paths = re.findall(r'<path d="M [^"]*" fill="#', text)
        assert len(sector_paths) == part.sector_count
        assert len(re.findall(r"<line ", text)) == n

    def test_single_chord_two_half_disks(self):
        text, part = make_svg(r0=0.0, chords=(0.4,))
        sector_paths = re.findall(r'<path d="M [^"]*" fill="#', text)
        assert len(sector_paths) == 2
        assert len(re.findall(r"<line ", text)) == 1

    def test_circle_scaled_to_ninety_percent(self):
        text, _ = make_svg()
        assert 'r="360.000000"' in text

    def test_coordinates_use_six_decimals(self):
        text, _ = make_svg()
        path_data = re.findall(r'd="([^"]*)"', text)
        for d in path_data:
            for token in re.findall(r"-?\d+\.\d+", d):
                assert len(token.split(".")[1]) == 6

    def test_legend_reports_alternating_sums(self):
        cfg = CircleConfig(1.0, 0.6, 0.3)
        part = build_partition(ChordFan((0.0, PI / 4, PI / 2, 3 * PI / 4)))
        report = area_report(cfg, part)
        text = render_svg(cfg, part, report)
        assert f"odd sum = {report.odd_sum:.9g}" in text
        assert f"even sum = {report.even_sum:.9g}" in text

    def test_legend_shows_balance_for_pizza_fan(self):
        text, _ = make_svg(r0=0.5, theta0=0.0)
        odd = re.search(r"odd sum = ([0-9.]+)", text).group(1)
        even = re.search(r"even sum = ([0-9.]+)", text).group(1)
        assert odd == even

    def test_distinct_configs_render_differently(self):
        first, _ = make_svg(r0=0.2)
        second, _ = make_svg(r0=0.7)
        assert first != second

    def test_arc_geometry_consistent_for_offset_single_chord(self):
        # Unequal half-disks: the larger sector must take the large-arc flag,
        # and every arc endpoint must lie on the rendered circle.
        cfg = CircleConfig(1.0, 0.7, 1.1)
        part = build_partition(ChordFan((0.3,)))
        report = area_report(cfg, part)
        text = render_svg(cfg, part, report)
        paths = re.findall(r'<path d="M ([^"]*)" fill="#', text)
        flags = [re.search(r"A [\d.]+ [\d.]+ 0 (\d) (\d)", p).groups() for p in paths]
        assert sorted(large for large, _ in flags) == ["0", "1"]
        assert all(sweep == "0" for _, sweep in flags)
        assert (report.sector_areas[0] > report.sector_areas[1]) == (flags[0][0] == "1")
        m = re.search(r'<circle cx="([\d.]+)" cy="([\d.]+)" r="360', text)
        cx, cy = float(m.group(1)), float(m.group(2))
        for p in paths:
            nums = [float(x) for x in re.findall(r"-?\d+\.\d{6}", p)]
            for x, y in ((nums[2], nums[3]), (nums[-2], nums[-1])):
                assert math.hypot(x - cx, y - cy) == pytest.approx(360.0, abs=1e-3)
