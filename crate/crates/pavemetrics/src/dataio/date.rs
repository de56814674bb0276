//! Minimal ISO 8601 calendar date, enough for inventory files.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsoDate {
    pub year: i32,
    pub month: u8,
    pub day: u8,
}

impl IsoDate {
    pub fn new(year: i32, month: u8, day: u8) -> Option<IsoDate> {
        if !(1..=12).contains(&month) || day == 0 || day > days_in_month(year, month) {
            return None;
        }
        Some(IsoDate { year, month, day })
    }
}

fn days_in_month(year: i32, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if year % 4 == 0 && (year % 100 != 0 || year % 400 == 0) => 29,
        2 => 28,
        _ => 0,
    }
}

impl fmt::Display for IsoDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

impl FromStr for IsoDate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split('-');
        let (y, m, d) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(y), Some(m), Some(d), None) => (y, m, d),
            _ => return Err(format!("`{s}` is not an ISO date (YYYY-MM-DD)")),
        };
        let year: i32 = y.parse().map_err(|_| format!("bad year in `{s}`"))?;
        let month: u8 = m.parse().map_err(|_| format!("bad month in `{s}`"))?;
        let day: u8 = d.parse().map_err(|_| format!("bad day in `{s}`"))?;
        IsoDate::new(year, month, day).ok_or_else(|| format!("`{s}` is not a valid calendar date"))
    }
}
