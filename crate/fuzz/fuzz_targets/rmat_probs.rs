// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#![no_main]

use kcore_maint::RmatProbs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: &str| {
    if let Ok(p) = input.parse::<RmatProbs>() {
        let sum = p.a + p.b + p.c + p.d;
        assert!((sum - 1.0).abs() <= 1e-6);
        assert!([p.a, p.b, p.c, p.d]
            .iter()
            .all(|x| x.is_finite() && *x >= 0.0));
    }
});
