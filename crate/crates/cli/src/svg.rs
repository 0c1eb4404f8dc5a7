use std::fmt::Write as _;

use revoflow::Curve;

const WIDTH: f64 = 640.0;
const PAD: f64 = 16.0;

/// Closed polylines in the `(x, y)` half-plane, `y` up, on a shared scale.
pub fn render(curves: &[&Curve]) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for c in curves {
        for [x, y] in c.points() {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    // include the axis y = 0 so distance to the rotation axis is visible
    y0 = y0.min(0.0);
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let k = (WIDTH - 2.0 * PAD) / span;
    let w = (x1 - x0) * k + 2.0 * PAD;
    let h = (y1 - y0) * k + 2.0 * PAD;
    let px = |x: f64| PAD + (x - x0) * k;
    let py = |y: f64| h - PAD - (y - y0) * k;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(
        s,
        r##"<line x1="0" y1="{a:.2}" x2="{w:.1}" y2="{a:.2}" stroke="#999" stroke-dasharray="4 4"/>"##,
        a = py(0.0)
    );
    let n = curves.len().max(1) as f64;
    for (i, c) in curves.iter().enumerate() {
        let shade = (200.0 * (1.0 - (i as f64 + 1.0) / n)) as u8;
        let _ = write!(
            s,
            r#"<polygon fill="none" stroke="rgb({shade},{shade},255)" stroke-width="1.5" points=""#
        );
        for [x, y] in c.points() {
            let _ = write!(s, "{:.2},{:.2} ", px(x), py(y));
        }
        s.push_str("\"/>\n");
    }
    s.push_str("</svg>\n");
    s
}
