//! Shares taken from the exclusive pool and the cost of switching state.

use crate::math;
use crate::sim::PortfolioTimeSeries;

/// Shares the exclusive holdings can supply: `min(H, max(B + δL − I, 0))`.
#[inline]
pub fn max_take(borrow: f64, locates: f64, inventory: f64, holdings: f64, delta: f64) -> f64 {
    let excess = borrow + delta * locates - inventory;
    holdings.min(excess.max(0.0))
}

/// Take/Give state of one period's net demand `B + δL − I`. Zero demand is
/// neither state.
#[inline]
fn state(net_demand: f64) -> (f64, f64) {
    if net_demand > 0.0 {
        (1.0, 0.0)
    } else if net_demand < 0.0 {
        (0.0, 1.0)
    } else {
        (0.0, 0.0)
    }
}

/// Per-period transaction costs of one security's net-demand path: `c` if
/// the first period is a Take, then `(c/2)·|ΔTake − ΔGive|` per period.
pub fn transaction_cost_path(net_demand: &[f64], cost: f64, out: &mut [f64]) {
    debug_assert_eq!(net_demand.len(), out.len());
    let mut prev = (0.0, 0.0);
    for (t, (&d, o)) in net_demand.iter().zip(out.iter_mut()).enumerate() {
        let cur = state(d);
        *o = if t == 0 {
            cost * cur.0
        } else {
            0.5 * cost * math::abs((cur.0 - prev.0) - (cur.1 - prev.1))
        };
        prev = cur;
    }
}

/// Total transaction cost of one security's net-demand path.
pub fn transaction_cost_of_path(net_demand: &[f64], cost: f64) -> f64 {
    let mut per = alloc::vec![0.0; net_demand.len()];
    transaction_cost_path(net_demand, cost, &mut per);
    per.iter().sum()
}

/// Portfolio transaction costs per day, summed over securities. `delta`
/// overrides every security's own conversion rate when given.
pub fn daily_transaction_costs(ts: &PortfolioTimeSeries, cost: f64, delta: Option<f64>) -> alloc::vec::Vec<f64> {
    let n = ts.n_days();
    let mut total = alloc::vec![0.0; n];
    let mut demand = alloc::vec![0.0; n];
    let mut per = alloc::vec![0.0; n];
    for i in 0..ts.n_securities() {
        let d = delta.unwrap_or(ts.delta(i));
        let (b, l, inv) = (ts.borrow(i), ts.locates(i), ts.inventory(i));
        for t in 0..n {
            demand[t] = b[t] + d * l[t] - inv[t];
        }
        transaction_cost_path(&demand, cost, &mut per);
        for t in 0..n {
            total[t] += per[t];
        }
    }
    total
}

/// Total portfolio transaction costs.
pub fn transaction_costs(ts: &PortfolioTimeSeries, cost: f64, delta: Option<f64>) -> f64 {
    daily_transaction_costs(ts, cost, delta).iter().sum()
}
