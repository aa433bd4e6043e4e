import type { Route } from "./types.js";

/** Badge label for an answer, e.g. "partial · keyword". Pure function of
 * the route; nothing else may influence the text. */
export function routeBadge(route: Route): string {
  const tier = route.tier.toLowerCase();
  return route.tool ? `${tier} · ${route.tool.toLowerCase()}` : tier;
}
