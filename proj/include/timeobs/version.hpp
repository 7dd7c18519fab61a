#pragma once

#define TIMEOBS_VERSION "1.0.0"
