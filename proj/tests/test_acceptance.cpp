// Acceptance suite binary: runs every verification criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion.

#include <iostream>

#include "wentzell/acceptance.hpp"

int main() {
    wentzell::AcceptanceResult res = wentzell::run_acceptance(1, std::cout);
    return res.all_pass ? 0 : 1;
}
