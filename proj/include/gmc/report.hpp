#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gmc {

// One line of a verification report. Informational lines carry facts that
// are neither a pass nor a failure (for example whether an operation is
// idempotent) and never affect ok().
struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
  std::size_t instances = 0;
  bool info = false;
};

class Report {
 public:
  void pass(std::string name, std::size_t instances = 0);
  void fail(std::string name, std::string counterexample, std::size_t instances = 0);
  void note(std::string name, std::string detail);
  void add(Check c) { checks_.push_back(std::move(c)); }
  void merge(const Report& other);

  bool ok() const;
  const Check* find(const std::string& name) const;
  bool passed(const std::string& name) const;
  const std::vector<Check>& checks() const { return checks_; }

  // Line-oriented rendering: "NAME PASS", "NAME FAIL <counterexample>", "NAME INFO <detail>".
  std::string render() const;

 private:
  std::vector<Check> checks_;
};

// Accumulates the outcome of one law over many instances, keeping the first
// counterexample in scan order.
class LawTally {
 public:
  explicit LawTally(std::string name) : name_(std::move(name)) {}
  void count() { ++n_; }
  void failure(const std::string& cex) {
    if (!failed_) {
      failed_ = true;
      cex_ = cex;
    }
  }
  bool failed() const { return failed_; }
  void into(Report& r) const {
    if (failed_)
      r.fail(name_, cex_, n_);
    else
      r.pass(name_, n_);
  }

 private:
  std::string name_;
  std::size_t n_ = 0;
  bool failed_ = false;
  std::string cex_;
};

}  // namespace gmc
