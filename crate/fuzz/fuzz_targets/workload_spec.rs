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

use kcore_bench::Workload;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: &str| {
    if let Ok(w) = input.parse::<Workload>() {
        assert_eq!(w.to_string().parse::<Workload>().unwrap(), w);
    }
});
