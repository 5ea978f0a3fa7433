// Copyright 2026 The annotkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANNOTKIT_ANNOTATION_IO_HPP_
#define ANNOTKIT_ANNOTATION_IO_HPP_

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "annotkit/batching.hpp"
#include "annotkit/run.hpp"
#include "annotkit/taxonomy.hpp"

namespace annotkit {

// One JSON object per line:
// {post_id, annotator_id, violence, direction, code, reason, batch_id, ordinal}
std::string AnnotationToJsonLine(const Annotation& a);
void WriteAnnotationsJsonl(std::span<const Annotation> annotations, std::ostream& out);
void WriteAnnotationsJsonl(std::span<const Annotation> annotations,
                           const std::filesystem::path& path);

// Reads JSONL (as above; "code" or violence/direction) or CSV with a header
// containing post_id and either code or violence[,direction]. A missing
// annotator_id falls back to `default_annotator`. Throws Error(kIo/kParse);
// duplicate (post_id, annotator_id) pairs are a parse error.
std::vector<Annotation> ReadAnnotations(const std::filesystem::path& path,
                                        const std::string& default_annotator = "");

// {batch_id, error, post_ids} per line.
void WriteFailuresJsonl(std::span<const BatchFailure> failures, std::ostream& out);

// Ledger, retry log and run identity as a JSON document (no wall time, so
// the file is reproducible).
std::string RunSummaryJson(const AnnotationRun& run);

}  // namespace annotkit

#endif  // ANNOTKIT_ANNOTATION_IO_HPP_
