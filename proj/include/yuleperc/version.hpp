#pragma once

#define YULEPERC_VERSION "0.1.0"
