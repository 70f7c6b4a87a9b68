#pragma once

// Umbrella header. The CLI front end (certnet/cli.hpp) is kept out because
// it pulls in CLI11.

#include "certnet/degree.hpp"
#include "certnet/distribution.hpp"
#include "certnet/errors.hpp"
#include "certnet/fuzzy.hpp"
#include "certnet/io.hpp"
#include "certnet/kb.hpp"
#include "certnet/logic.hpp"
#include "certnet/network.hpp"
