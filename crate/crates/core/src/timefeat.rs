//! Time-based behavioral statistics: posting-second uniformity and
//! sleep-break detection over 48-hour windows.

use alloc::vec::Vec;

pub const WINDOW_48H_SECS: i64 = 48 * 3600;
const SECS_PER_HOUR: f64 = 3600.0;

/// Chi-square statistic of the seconds-of-minute field against a uniform
/// expectation of `n / 60` per bin. Scheduled bots concentrate mass in few
/// bins and score high; humans stay near the chi-square(59) mean.
pub fn chi_square_seconds(timestamps: &[i64]) -> f64 {
    if timestamps.is_empty() {
        return 0.0;
    }
    let mut observed = [0u64; 60];
    for &ts in timestamps {
        observed[ts.rem_euclid(60) as usize] += 1;
    }
    let expected = timestamps.len() as f64 / 60.0;
    observed
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// Average longest and second-longest inactivity gap per 48h window, in hours.
///
/// Windows are aligned to the account's first tweet and cover the timeline
/// span; the final window is truncated at the last tweet. Window boundaries
/// count as virtual events. Zero-length gaps are ignored; a window without
/// positive gaps (single event, or no events) contributes the full window
/// length to both averages, so a one-tweet timeline yields (48h, 48h).
pub fn longest_breaks(sorted_timestamps: &[i64], window_secs: i64) -> (f64, f64) {
    let window_hours = window_secs as f64 / SECS_PER_HOUR;
    if sorted_timestamps.is_empty() {
        return (window_hours, window_hours);
    }
    let first = sorted_timestamps[0];
    let last = *sorted_timestamps.last().unwrap();
    let span = last - first;
    let n_windows = if span == 0 {
        1
    } else {
        ((span + window_secs - 1) / window_secs) as usize
    };

    let mut events: Vec<Vec<i64>> = alloc::vec![Vec::new(); n_windows];
    for &ts in sorted_timestamps {
        let idx = (((ts - first) / window_secs) as usize).min(n_windows - 1);
        events[idx].push(ts);
    }

    let mut sum_longest = 0.0;
    let mut sum_second = 0.0;
    for (w, evs) in events.iter().enumerate() {
        let w_start = first + (w as i64) * window_secs;
        let w_end = if w + 1 == n_windows {
            last
        } else {
            w_start + window_secs
        };
        let mut gaps: Vec<i64> = Vec::with_capacity(evs.len() + 1);
        let mut prev = w_start;
        for &ts in evs {
            if ts > prev {
                gaps.push(ts - prev);
            }
            prev = ts;
        }
        if w_end > prev {
            gaps.push(w_end - prev);
        }
        gaps.sort_unstable_by(|a, b| b.cmp(a));
        let (longest, second) = match gaps.len() {
            0 => (window_secs, window_secs),
            1 => (gaps[0], gaps[0]),
            _ => (gaps[0], gaps[1]),
        };
        sum_longest += longest as f64 / SECS_PER_HOUR;
        sum_second += second as f64 / SECS_PER_HOUR;
    }
    (
        sum_longest / n_windows as f64,
        sum_second / n_windows as f64,
    )
}

/// Median of a sample; 0.0 for an empty slice.
pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn chi_square_all_same_second() {
        let timestamps: Vec<i64> = (0..600).map(|i| i * 60).collect(); // all at second 0
        let stat = chi_square_seconds(&timestamps);
        assert!((stat - 35_400.0).abs() < 1e-9);
    }

    #[test]
    fn chi_square_exactly_uniform() {
        let timestamps: Vec<i64> = (0..600).map(|i| (i % 60) + i * 1200).collect();
        assert!(chi_square_seconds(&timestamps).abs() < 1e-9);
    }

    #[test]
    fn breaks_every_six_hours() {
        let timestamps: Vec<i64> = (0..121).map(|i| i * 6 * 3600).collect(); // 30 days
        let (longest, second) = longest_breaks(&timestamps, WINDOW_48H_SECS);
        assert!((longest - 6.0).abs() < 1e-9);
        assert!((second - 6.0).abs() < 1e-9);
    }

    #[test]
    fn single_tweet_yields_window_length() {
        let (longest, second) = longest_breaks(&[1_000_000], WINDOW_48H_SECS);
        assert!((longest - 48.0).abs() < 1e-9);
        assert!((second - 48.0).abs() < 1e-9);
    }

    #[test]
    fn median_even_and_odd() {
        assert!((median(&mut [3.0, 1.0, 2.0]) - 2.0).abs() < 1e-12);
        assert!((median(&mut [4.0, 1.0, 2.0, 3.0]) - 2.5).abs() < 1e-12);
        assert_eq!(median(&mut []), 0.0);
    }
}
