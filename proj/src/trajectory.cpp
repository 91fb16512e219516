#include "visco/trajectory.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "visco/errors.hpp"

namespace visco {

void Trajectory::reserve(std::size_t n) {
  t.reserve(n);
  x.reserve(n);
  xdot.reserve(n);
  xddot.reserve(n);
  F.reserve(n);
}

void Trajectory::push_back(double time, double disp, double vel, double acc, double force) {
  t.push_back(time);
  x.push_back(disp);
  xdot.push_back(vel);
  xddot.push_back(acc);
  F.push_back(force);
}

void Trajectory::push_back(double time, double disp, double vel, double acc, double force,
                           double force_rate) {
  push_back(time, disp, vel, acc, force);
  Fdot.push_back(force_rate);
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

double parse_double(const std::string& text) {
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  if (first < last && *first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError("not a number: '" + text + "'");
  }
  return v;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,x,xdot,xddot,F\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_double(traj.t[i]) << ',' << format_double(traj.x[i]) << ','
        << format_double(traj.xdot[i]) << ',' << format_double(traj.xddot[i]) << ','
        << format_double(traj.F[i]) << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_trajectory_csv(out, traj);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,x,xdot,xddot,F") throw ParseError("unexpected trajectory header: " + line, 1);

  constexpr std::array<const char*, 5> kColumns = {"t", "x", "xdot", "xddot", "F"};
  Trajectory traj;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 5> v{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= v.size()) throw ParseError("too many columns", row);
      try {
        v[col] = parse_double(cell);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), row, kColumns[col]);
      }
      ++col;
    }
    if (col != v.size()) throw ParseError("expected 5 columns", row, kColumns[col]);
    traj.push_back(v[0], v[1], v[2], v[3], v[4]);
  }
  return traj;
}

}  // namespace visco
