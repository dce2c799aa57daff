#pragma once

#define BRAIDWALK_VERSION "0.1.0"
#define BRAIDWALK_SCHEMA "braidwalk-report/1"
