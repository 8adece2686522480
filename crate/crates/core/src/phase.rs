//! Static SVG phase diagrams of the limit inclusion.
//!
//! Markers: green for stable steady states, red for unstable ones, purple
//! for quasi steady states outside their own region, gray for thresholds
//! that are not steady states. Thresholds are dashed; arrows give the
//! direction of the flow between landmarks.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dynamics::region_of;
use crate::limit::{drift, ConfigIndex, Landmark, LimitAnalysis};
use crate::params::{Evocativeness, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerRole {
    Stable,
    Unstable,
    OutOfRegion,
    NotSteady,
}

impl MarkerRole {
    pub fn color(self) -> &'static str {
        match self {
            MarkerRole::Stable => "#2e7d32",
            MarkerRole::Unstable => "#c62828",
            MarkerRole::OutOfRegion => "#7b1fa2",
            MarkerRole::NotSteady => "#9e9e9e",
        }
    }
}

/// Role of each live landmark in an analysis, in location order.
pub fn marker_roles(a: &LimitAnalysis) -> Vec<(Landmark, f64, MarkerRole)> {
    a.live_landmarks()
        .into_iter()
        .map(|(l, y)| {
            let role = if a.is_limit_point(l) {
                MarkerRole::Stable
            } else if a.unstable_set.iter().any(|u| u.landmark == l) {
                MarkerRole::Unstable
            } else if matches!(l, Landmark::Qss(_)) {
                MarkerRole::OutOfRegion
            } else {
                MarkerRole::NotSteady
            };
            (l, y, role)
        })
        .collect()
}

/// Marker roles implied by a landmark order alone.
///
/// Inside a region the flow points toward that region's quasi steady
/// state, so the order fixes every role: a quasi steady state is stable
/// iff it lies in its own region, and a threshold is stable (unstable) iff
/// the flows on its two sides point toward (away from) it.
pub fn roles_from_order(order: &[Landmark; 5]) -> Vec<(Landmark, MarkerRole)> {
    let rank = |l: Landmark| order.iter().position(|&x| x == l);
    let th: Vec<(usize, Evocativeness)> = order
        .iter()
        .enumerate()
        .filter_map(|(k, l)| match l {
            Landmark::Threshold(e) => Some((k, *e)),
            _ => None,
        })
        .collect();
    let (t_lo, t_hi) = (th[0].0, th[1].0);
    let inter = if th[0].1 == Evocativeness::Interesting { Region::InterestingOnly } else { Region::MildOnly };
    let region_at = |k: usize| {
        if k < t_lo {
            Region::NoSharing
        } else if k < t_hi {
            inter
        } else {
            Region::All
        }
    };
    let qss_rank = |r: Region| rank(Landmark::Qss(r)).expect("live quasi steady state");
    // Flow just left (right) of the threshold at rank k points right iff
    // the neighboring region's quasi steady state lies above it.
    let right_of = |k: usize| match k {
        k if k == t_lo => inter,
        _ => Region::All,
    };
    let left_of = |k: usize| match k {
        k if k == t_lo => Region::NoSharing,
        _ => inter,
    };
    order
        .iter()
        .enumerate()
        .map(|(k, &l)| {
            let role = match l {
                Landmark::Qss(r) => {
                    if region_at(k) == r {
                        MarkerRole::Stable
                    } else {
                        MarkerRole::OutOfRegion
                    }
                }
                Landmark::Threshold(_) => {
                    let left_up = qss_rank(left_of(k)) > k;
                    let right_up = qss_rank(right_of(k)) > k;
                    match (left_up, right_up) {
                        (true, false) => MarkerRole::Stable,
                        (false, true) => MarkerRole::Unstable,
                        _ => MarkerRole::NotSteady,
                    }
                }
            };
            (l, role)
        })
        .collect()
}

const W: f64 = 760.0;
const H: f64 = 200.0;
const X0: f64 = 50.0;
const X1: f64 = 710.0;
const AXIS_Y: f64 = 110.0;

fn sx(y: f64) -> f64 {
    X0 + y * (X1 - X0)
}

fn label(l: Landmark) -> String {
    match l {
        Landmark::Qss(r) => format!("y*{}", r.code()),
        Landmark::Threshold(e) => format!("ŷ{}", e.code()),
    }
}

fn arrow(out: &mut String, x: f64, y: f64, right: bool, class: &str) {
    let d = if right { 7.0 } else { -7.0 };
    let _ = writeln!(
        out,
        r##"<path class="{class}" d="M{:.2},{:.2} L{:.2},{:.2} L{:.2},{:.2} Z" fill="#424242"/>"##,
        x - d,
        y - 5.0,
        x + d,
        y,
        x - d,
        y + 5.0
    );
}

/// One-dimensional phase diagram of an analysis on `[0, 1]`.
///
/// Exactly one `class="landmark"` marker is drawn per live landmark.
pub fn phase_svg(a: &LimitAnalysis) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="13">"##
    );
    let _ = writeln!(s, r##"<rect width="{W}" height="{H}" fill="white"/>"##);
    let _ = writeln!(
        s,
        r##"<text x="{X0}" y="22" font-size="12">{} | configuration {} ({})</text>"##,
        a.params,
        a.configuration.ordinal(),
        a.configuration.label()
    );

    // Region labels.
    let th = &a.thresholds;
    let bounds = [0.0, th.lower(), th.upper(), 1.0];
    for (k, r) in th.regions().into_iter().enumerate() {
        let mid = sx(0.5 * (bounds[k] + bounds[k + 1]));
        let _ = writeln!(s, r##"<text class="region" x="{mid:.2}" y="52" text-anchor="middle" font-weight="bold">{}</text>"##, r.code());
    }

    let _ = writeln!(s, r##"<line x1="{X0}" y1="{AXIS_Y}" x2="{X1}" y2="{AXIS_Y}" stroke="black" stroke-width="1.5"/>"##);
    for (v, t) in [(0.0, "0"), (1.0, "1")] {
        let _ = writeln!(s, r##"<text x="{:.2}" y="{}" text-anchor="middle">{t}</text>"##, sx(v), AXIS_Y + 40.0);
    }
    for e in Evocativeness::ALL {
        let x = sx(th.get(e));
        let _ = writeln!(
            s,
            r##"<line class="threshold" x1="{x:.2}" y1="60" x2="{x:.2}" y2="{}" stroke="#616161" stroke-dasharray="5,4"/>"##,
            AXIS_Y + 25.0
        );
    }

    // Flow arrows, one per gap between consecutive landmarks.
    let roles = marker_roles(a);
    let mut cuts = vec![0.0];
    cuts.extend(roles.iter().map(|r| r.1));
    cuts.push(1.0);
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let g = drift(region_of(mid, th), mid, &a.params);
        arrow(&mut s, sx(mid), AXIS_Y - 14.0, g > 0.0, "flow");
    }

    for (l, y, role) in roles {
        let x = sx(y);
        let _ = writeln!(
            s,
            r##"<circle class="landmark" data-landmark="{l}" data-role="{}" cx="{x:.2}" cy="{AXIS_Y}" r="6" fill="{}" stroke="black" stroke-width="0.8"/>"##,
            serde_json::to_value(role).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            role.color()
        );
        let dy = if matches!(l, Landmark::Threshold(_)) { 24.0 } else { 40.0 };
        let _ = writeln!(s, r##"<text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="11">{}</text>"##, AXIS_Y + dy, label(l));
    }
    s.push_str("</svg>\n");
    s
}

/// Grid of schematic phase lines for all 40 configurations, landmarks
/// evenly spaced in their configuration's order.
pub fn atlas_svg() -> String {
    let (cols, cell_w, cell_h) = (4usize, 300.0, 90.0);
    let rows = ConfigIndex::COUNT.div_ceil(cols);
    let (w, h) = (cols as f64 * cell_w, rows as f64 * cell_h);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="10">"##
    );
    let _ = writeln!(s, r##"<rect width="{w}" height="{h}" fill="white"/>"##);
    for cfg in ConfigIndex::all() {
        let k = cfg.ordinal();
        let (ox, oy) = ((k % cols) as f64 * cell_w, (k / cols) as f64 * cell_h);
        let (a0, a1, ay) = (ox + 20.0, ox + cell_w - 20.0, oy + 50.0);
        let at = |i: usize| a0 + (i as f64 + 1.0) * (a1 - a0) / 6.0;
        let _ = writeln!(s, r##"<g class="panel" data-ordinal="{k}">"##);
        let _ = writeln!(s, r##"<text x="{:.1}" y="{:.1}">{k}: {}</text>"##, a0, oy + 18.0, cfg.label());
        let _ = writeln!(s, r##"<line x1="{a0:.1}" y1="{ay:.1}" x2="{a1:.1}" y2="{ay:.1}" stroke="black"/>"##);
        let order = cfg.ordering();
        for (i, (l, role)) in roles_from_order(&order).into_iter().enumerate() {
            let x = at(i);
            if matches!(l, Landmark::Threshold(_)) {
                let _ = writeln!(
                    s,
                    r##"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="#616161" stroke-dasharray="3,3"/>"##,
                    ay - 18.0,
                    ay + 12.0
                );
            }
            let _ = writeln!(s, r##"<circle cx="{x:.1}" cy="{ay:.1}" r="4.5" fill="{}" stroke="black" stroke-width="0.6"/>"##, role.color());
            let _ = writeln!(s, r##"<text x="{x:.1}" y="{:.1}" text-anchor="middle" font-size="9">{}</text>"##, ay + 24.0, label(l));
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
