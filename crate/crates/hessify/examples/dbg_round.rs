use hessify::jet::Jet1;
use hessify::metric::MetricJet;
use hessify::solver::{solve, InitialData};

fn main() {
    let m = MetricJet::round_sphere(8);
    let x1 = Jet1::variable(8);
    let x2 = Jet1::zero(8);
    let p2 = Jet1::variable(8);
    let g11_line = m.component(1, 1).restrict_to_axis().truncated(8);
    let rhs = g11_line
        .truncated(7)
        .sub(&p2.derivative().unwrap().mul(&x2.derivative().unwrap()));
    let p1 = rhs
        .div(&x1.derivative().unwrap())
        .unwrap()
        .antiderivative(0.0)
        .truncated(8);
    let data = InitialData {
        x1_curve: x1,
        x2_curve: x2,
        p2_curve: p2,
        p1_curve: p1,
        f0: 0.0,
        gauge_note: "manual".into(),
    };
    match solve(&m, &data, 8) {
        Ok(chart) => {
            println!("solve ok");
            for rec in &chart.diagnostics.rank_profile {
                println!(
                    "degree {}: rank {}/{} consistency {:e}",
                    rec.degree, rec.rank, rec.unknowns, rec.consistency
                );
            }
            println!("x1 = {}", chart.x1);
            println!("x2 = {}", chart.x2);
            println!("p1 = {}", chart.p1);
            println!("p2 = {}", chart.p2);
            match chart.element(&m) {
                Ok(e) => println!("element p = {:?} residual {:e}", e.p, hessify::eds::integral_element_residual(&e)),
                Err(e) => println!("element error: {e}"),
            }
        }
        Err(e) => println!("solve error: {e}"),
    }
}
