//! Second, independent transcription of the eight published models, kept
//! as structured text and parsed at test time. The registry must match
//! this copy digit for digit. A `.` in the significance column means no
//! stars were printed.

use pavemetrics_core::stats::Stars;

pub const TRANSCRIPTION: &str = "\
model PSI AC
intercept 4.397 ***
precipitation -0.006 * -0.211
temperature -0.019 . -0.249
log10_aadt -0.151 ** -0.301
ffs 0.021 *** 0.684
soil_type_A -0.047 . -0.094
fit 0.442 0.413 14.913 *** 5 94

model PSI JPCP
intercept 6.229 ***
precipitation -0.005 * -0.115
temperature -0.021 . -0.202
log10_aadt -0.809 *** -1.057
ffs 0.038 *** 1.044
soil_type_A -0.560 *** -1.018
fit 0.868 0.855 65.865 *** 5 50

model PDI AC
intercept -4.565 .
precipitation 0.000 . -0.006
temperature 0.104 ** 0.577
log10_aadt -0.160 . 0.131
ffs 0.033 *** 0.428
soil_type_A 0.787 ** 0.641
fit 0.172 0.128 3.938 ** 5 95

model PDI JPCP
intercept 7.576 ***
precipitation -0.007 * -0.191
temperature -0.012 . -0.155
log10_aadt -0.443 *** -0.751
ffs 0.003 . 0.107
soil_type_A -0.114 . -0.271
fit 0.639 0.604 18.071 *** 5 51

model PQI AC
intercept -2.683 .
precipitation -0.002 . -0.037
temperature 0.076 ** 0.530
log10_aadt 0.145 . -0.150
ffs 0.029 *** 0.479
soil_type_A 0.604 ** 0.620
fit 0.195 0.152 4.591 *** 5 95

model PQI JPCP
intercept 6.882 ***
precipitation -0.006 * -0.199
temperature -0.015 . -0.200
log10_aadt -0.491 *** -0.889
ffs 0.011 ** 0.423
soil_type_A -0.220 * 0.557
fit 0.729 0.703 27.470 *** 5 51

model IRI AC
intercept -4.876 .
precipitation 0.474 * 0.190
temperature 1.852 . 0.296
log10_aadt 14.686 ** 0.349
ffs -1.789 *** -0.669
soil_type_A 0.800 . 0.019
fit 0.407 0.376 13.315 *** 5 97

model IRI JPCP
intercept -116.797 *
precipitation 0.379 * 0.118
temperature 1.648 . 0.225
log10_aadt 57.820 *** 1.053
ffs -2.666 *** -1.032
soil_type_A 39.592 *** 1.003
fit 0.859 0.845 61.109 *** 5 50
";

#[derive(Debug)]
pub struct TranscribedCoef {
    pub name: String,
    pub beta: f64,
    pub stars: Stars,
    pub beta_std: Option<f64>,
}

#[derive(Debug)]
pub struct TranscribedModel {
    pub indicator: String,
    pub pavement_type: String,
    pub coefficients: Vec<TranscribedCoef>,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub f_stat: f64,
    pub f_stars: Stars,
    pub df1: usize,
    pub df2: usize,
}

fn parse_stars(s: &str) -> Stars {
    match s {
        "." => Stars::None,
        "*" => Stars::P05,
        "**" => Stars::P01,
        "***" => Stars::P001,
        other => panic!("bad stars token `{other}`"),
    }
}

pub fn parse_transcription() -> Vec<TranscribedModel> {
    let mut models = Vec::new();
    let mut current: Option<TranscribedModel> = None;
    for line in TRANSCRIPTION.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "model" => {
                if let Some(m) = current.take() {
                    models.push(m);
                }
                current = Some(TranscribedModel {
                    indicator: tokens[1].to_string(),
                    pavement_type: tokens[2].to_string(),
                    coefficients: Vec::new(),
                    r_squared: f64::NAN,
                    adj_r_squared: f64::NAN,
                    f_stat: f64::NAN,
                    f_stars: Stars::None,
                    df1: 0,
                    df2: 0,
                });
            }
            "fit" => {
                let m = current.as_mut().expect("fit line outside a model");
                m.r_squared = tokens[1].parse().unwrap();
                m.adj_r_squared = tokens[2].parse().unwrap();
                m.f_stat = tokens[3].parse().unwrap();
                m.f_stars = parse_stars(tokens[4]);
                m.df1 = tokens[5].parse().unwrap();
                m.df2 = tokens[6].parse().unwrap();
            }
            name => {
                let m = current.as_mut().expect("coefficient outside a model");
                m.coefficients.push(TranscribedCoef {
                    name: name.to_string(),
                    beta: tokens[1].parse().unwrap(),
                    stars: parse_stars(tokens[2]),
                    beta_std: tokens.get(3).map(|t| t.parse().unwrap()),
                });
            }
        }
    }
    models.extend(current);
    models
}
