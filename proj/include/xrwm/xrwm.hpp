#pragma once

#include "xrwm/attention.hpp"
#include "xrwm/error.hpp"
#include "xrwm/intent/goals.hpp"
#include "xrwm/intent/mock_resolver.hpp"
#include "xrwm/intent/plan.hpp"
#include "xrwm/intent/prompt.hpp"
#include "xrwm/intent/remote_resolver.hpp"
#include "xrwm/intent/resolver.hpp"
#include "xrwm/labels.hpp"
#include "xrwm/pca.hpp"
#include "xrwm/scene.hpp"
#include "xrwm/service/server.hpp"
#include "xrwm/service/session.hpp"
#include "xrwm/service/trace.hpp"
#include "xrwm/surfaces.hpp"
#include "xrwm/workspace.hpp"
