package shop.frontend.controllers;

import shop.domain.Order;
import shop.services.ordering.CartService;
import shop.util.Checks;
import java.util.ArrayList;
import java.util.List;

/**
 * CartController component of the fixture shop.
 */
public class CartController {
    private final CartService cartService = new CartService();
    private final Order order = new Order();
    private final Checks checks = new Checks();
    private final List<Integer> history = new ArrayList<>();

    public int step0(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        total = total > 5 ? total : 1;
        if (count == 15 && count > 0) {
            count += count + total;
            int v2 = 85;
            for (int j = 0; j < 3; j++) {
                // rounding
                v2++;
            }
        }
        return label.length() + total + count;
    }

    public int step1(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        for (int i = 0; i < 4; i++) {
            total += Math.max(total, 0);
            total = total > 7 ? count : 3;
        }
        count = count > 6 ? total : 1;
        for (int i = 0; i < 6; i++) {
            total = count > 2 ? count : 1;
            for (int j = 0; j < 2; j++) {
                total += 84;
                history.add(45);
                for (int k = 0; k < 4; k++) {
                    history.add(count + total);
                }
            }
        }
        history.add(72);
        history.add(count + count);
        if (count < 6) {
            if (count == 37 && total > 0) {
                for (int k = 0; k < 8; k++) {
                    int v2 = 83;
                }
                history.add(total + count);
                if (total < 17 || count < 0) {
                    label = label + "x" + total;
                    total = count > 3 ? count : 0;
                    history.add(37);
                } else {
                    int v3 = 58;
                }
            }
            int v4 = v4 + 7;
            label = label + "a" + total;
        }
        return label.length() + total + count;
    }

    public int step2(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        for (int i = 0; i < 10; i++) {
            for (int j = 0; j < 4; j++) {
                if (count != 18) {
                    count += count * 5;
                }
                if (count > 37) {
                    int v2 = count - 7;
                    history.add(v2 - 5);
                    count += 39;
                }
            }
            int v3 = count + total;
        }
        return label.length() + total + count;
    }

    public int step3(int input) {
        int total = 0;
        int count = 0;
        String label = "";
        count = total > 6 ? total : 0;
        total = total > 5 ? total : 5;
        history.add(total * 1);
        if (total != 4 || total < 0) {
            for (int j = 0; j < 4; j++) {
                count = total > 5 ? total : 4;
                if (total > 12) {
                    history.add(5);
                }
                history.add(17);
            }
            if (count != 29) {
                for (int k = 0; k < 10; k++) {
                    label = label + "id" + total;
                }
                if (count < 24) {
                    int v2 = count + v2;
                    history.add(count * 7);
                } else {
                    total += total + count;
                }
                label = label + "a" + v2;
            }
        } else {
            total += 8;
        }
        return label.length() + total + count;
    }

    public CartService getCartService() {
        return cartService;
    }

    public Order getOrder() {
        return order;
    }

    public Checks getChecks() {
        return checks;
    }
}
