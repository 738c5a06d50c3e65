#pragma once

#include "invconn/cli/cli.hpp"
#include "invconn/special/gauge.hpp"
